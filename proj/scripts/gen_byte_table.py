"""Writes the canonical 256-entry byte -> printable code point table used as a test fixture."""
from transformers.convert_slow_tokenizer import bytes_to_unicode

table = bytes_to_unicode()
with open("tests/fixtures/byte_table.txt", "w") as out:
    out.write("# byte code_point\n")
    for b in range(256):
        out.write(f"{b} {ord(table[b])}\n")
