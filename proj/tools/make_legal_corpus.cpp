// Writes a deterministic synthetic corpus of legal prose: opinions, statutes
// and contract clauses assembled from fixed word lists and citation
// templates. Only raw mt19937 output is used (no std distributions), so the
// bytes are identical on every platform.
//
//   make_legal_corpus OUT_DIR [TOTAL_BYTES] [SEED]

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

using Words = std::vector<const char*>;

const Words kParties = {
    "Smith", "Jones", "Garcia", "Miller", "Davis", "Rodriguez", "Martinez", "Hernandez", "Lopez",
    "Wilson", "Anderson", "Thomas", "Taylor", "Moore", "Jackson", "Martin", "Lee", "Thompson",
    "White", "Harris", "Clark", "Lewis", "Robinson", "Walker", "Young", "Allen", "King", "Wright",
    "United States", "State of Ohio", "Acme Corp.", "First National Bank", "Pacific Railroad Co.",
    "Commissioner", "Secretary of Labor", "City of Boston", "Board of Education",
    "Federal Trade Commission", "Securities and Exchange Commission", "Goldman Holdings, LLC",
};
const Words kReporters = {"U.S.", "S. Ct.", "F.2d", "F.3d", "F.4th", "F. Supp.", "F. Supp. 2d",
                          "F. Supp. 3d", "B.R.", "L. Ed. 2d", "A.2d", "N.E.2d", "P.3d", "So. 2d"};
const Words kCourts = {"1st Cir.", "2d Cir.", "3d Cir.", "4th Cir.", "5th Cir.", "7th Cir.", "9th Cir.",
                       "D.C. Cir.", "Fed. Cir.", "S.D.N.Y.", "N.D. Cal.", "D. Del.", "E.D. Va.", "Bankr. D. Del."};
const Words kSubjects = {
    "the court", "the district court", "the plaintiff", "the defendant", "the appellant",
    "the appellee", "the debtor", "the trustee", "the agency", "the Commission", "the petitioner",
    "the respondent", "the jury", "the magistrate judge", "the bankruptcy court", "Congress",
    "the moving party", "the lessee", "the lessor", "the Company", "the Borrower", "the Lender",
};
const Words kVerbs = {
    "held", "concluded", "found", "determined", "reasoned", "argued", "contended", "acknowledged",
    "observed", "noted", "emphasized", "declined to decide", "recognized", "maintained", "asserted",
};
const Words kClauses = {
    "the statute of limitations had expired before the complaint was filed",
    "the automatic stay applies to all entities and to any act to obtain possession of property of the estate",
    "summary judgment is appropriate where there is no genuine dispute as to any material fact",
    "the complaint failed to state a claim upon which relief can be granted",
    "the agency's interpretation was entitled to deference",
    "the contract was unenforceable for lack of consideration",
    "the evidence was sufficient to support the verdict",
    "the district court abused its discretion in denying leave to amend",
    "the claim is barred by res judicata and collateral estoppel",
    "due process requires notice and an opportunity to be heard",
    "the plaintiff lacked standing under Article III",
    "the arbitration clause covers disputes arising out of or relating to the agreement",
    "the indemnification obligations survive termination of this Agreement",
    "the writ of certiorari should be granted to resolve the conflict among the circuits",
    "the search violated the Fourth Amendment",
    "the regulation exceeded the scope of the statutory delegation",
    "the debtor's obligations were dischargeable",
    "the injunction was overbroad and vague",
    "the fiduciary breached the duty of loyalty owed to the beneficiaries",
    "EBITDA and net income must be reported under generally accepted accounting principles",
    "the registrant shall disclose material weaknesses in internal control over financial reporting",
    "habeas corpus relief is unavailable where the claim was procedurally defaulted",
    "the parties shall act in good faith and deal fairly with one another",
    "the burden of proof rests with the party asserting the affirmative defense",
};
const Words kConnectives = {"Moreover,", "However,", "Accordingly,", "Nevertheless,", "In addition,",
                            "Furthermore,", "Consequently,", "By contrast,", "Thus,", "Therefore,"};
const Words kStatutes = {
    "11 U.S.C. § 362(a)", "11 U.S.C. § 523(a)(2)(A)", "28 U.S.C. § 1331", "28 U.S.C. § 1332(a)",
    "42 U.S.C. § 1983", "15 U.S.C. § 78j(b)", "29 U.S.C. § 1132(a)(1)(B)", "18 U.S.C. § 1341",
    "5 U.S.C. § 706(2)(A)", "17 C.F.R. § 240.10b-5", "26 U.S.C. § 501(c)(3)", "35 U.S.C. § 101",
};
const Words kRules = {
    "Fed. R. Civ. P. 12(b)(6)", "Fed. R. Civ. P. 56(a)", "Fed. R. Civ. P. 23(b)(3)", "Fed. R. Evid. 702",
    "Fed. R. App. P. 4(a)(1)(A)", "Fed. R. Crim. P. 11", "Fed. R. Bankr. P. 7001",
};
const Words kHeadings = {"BACKGROUND", "DISCUSSION", "STANDARD OF REVIEW", "ANALYSIS", "CONCLUSION",
                         "FINDINGS OF FACT", "CONCLUSIONS OF LAW", "DEFINITIONS", "REPRESENTATIONS AND WARRANTIES"};

class Source {
 public:
  explicit Source(std::uint32_t seed) : gen_(seed) {}
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(gen_() % n); }
  const char* pick(const Words& w) { return w[below(static_cast<std::uint32_t>(w.size()))]; }
  bool chance(std::uint32_t percent) { return below(100) < percent; }

 private:
  std::mt19937 gen_;
};

std::string roman(int v) {
  static const int values[] = {10, 9, 5, 4, 1};
  static const char* symbols[] = {"x", "ix", "v", "iv", "i"};
  std::string out;
  for (int i = 0; i < 5; ++i) {
    while (v >= values[i]) {
      out += symbols[i];
      v -= values[i];
    }
  }
  return out;
}

// Pseudo-English word list built from syllables, so the corpus has a long
// lexical tail instead of only the fixed phrase lists above.
std::vector<std::string> make_lexicon(Source& s, std::size_t n) {
  static const Words onsets = {"b", "c", "d", "f", "g", "h", "l", "m", "n", "p", "r", "s", "t", "v", "w",
                               "br", "cl", "cr", "dr", "fl", "gr", "pl", "pr", "st", "str", "tr", "sh", "ch", "th", ""};
  static const Words nuclei = {"a", "e", "i", "o", "u", "ai", "ea", "ou", "io", "ee", "y"};
  static const Words codas = {"", "", "", "n", "r", "s", "t", "l", "m", "nd", "nt", "rs", "st", "ck", "x"};
  static const Words suffixes = {"", "", "", "", "tion", "ment", "ity", "ed", "ing", "ly", "al", "ous",
                                 "ance", "ive", "able", "ize", "er", "ure", "ism", "ant"};
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string w;
    const auto syllables = 1 + s.below(3);
    for (std::uint32_t k = 0; k < syllables; ++k) w += std::string(s.pick(onsets)) + s.pick(nuclei) + s.pick(codas);
    w += s.pick(suffixes);
    words.push_back(std::move(w));
  }
  return words;
}

// Skewed toward low indices, roughly Zipfian.
const std::string& skewed(Source& s, const std::vector<std::string>& words) {
  const auto n = static_cast<std::uint32_t>(words.size());
  return words[s.below(1 + s.below(1 + s.below(n)))];
}

std::string prose(Source& s, const std::vector<std::string>& lexicon) {
  static const Words function_words = {"the", "of", "and", "to", "in", "a", "that", "by", "for", "with", "as",
                                       "on", "such", "any", "which", "shall", "be", "is", "was", "not", "or"};
  std::string out;
  const auto words = 8 + s.below(18);
  for (std::uint32_t i = 0; i < words; ++i) {
    std::string w = s.chance(40) ? s.pick(function_words) : skewed(s, lexicon);
    if (i == 0 || s.chance(4)) w[0] = static_cast<char>(w[0] - 32 * (w[0] >= 'a' && w[0] <= 'z'));
    if (i) out += s.chance(6) ? ", " : " ";
    out += w;
  }
  return out + (s.chance(10) ? ";" : ".");
}

std::string case_citation(Source& s) {
  std::string c = std::string(s.pick(kParties)) + " v. " + s.pick(kParties) + ", ";
  c += std::to_string(1 + s.below(999)) + " " + s.pick(kReporters) + " " + std::to_string(1 + s.below(1500));
  if (s.chance(40)) c += ", " + std::to_string(1 + s.below(1500));
  const int year = 1800 + static_cast<int>(s.below(225));
  c += s.chance(50) ? " (" + std::string(s.pick(kCourts)) + " " + std::to_string(year) + ")"
                    : " (" + std::to_string(year) + ")";
  return c;
}

std::string sentence(Source& s, const std::vector<std::string>& lexicon) {
  std::string out;
  switch (s.below(10)) {
    case 0:
      out = std::string(s.pick(kConnectives)) + " " + s.pick(kSubjects) + " " + s.pick(kVerbs) + " that " +
            s.pick(kClauses) + ". See " + case_citation(s) + ".";
      break;
    case 1:
      out = std::string("Under ") + s.pick(kStatutes) + ", " + s.pick(kClauses) + ".";
      break;
    case 2:
      out = std::string("The motion to dismiss under ") + s.pick(kRules) + " is " +
            (s.chance(50) ? "GRANTED" : "DENIED") + " because " + s.pick(kClauses) + ".";
      break;
    case 3: {
      std::string subject = s.pick(kSubjects);
      subject[0] = static_cast<char>(subject[0] - 32 * (subject[0] >= 'a' && subject[0] <= 'z'));
      out = subject + " " + s.pick(kVerbs) + " that " + s.pick(kClauses) + " (citing " + case_citation(s) + ").";
      break;
    }
    case 4:
      out = std::string("Section ") + std::to_string(1 + s.below(20)) + "." + std::to_string(1 + s.below(12)) +
            "(" + static_cast<char>('a' + s.below(8)) + ")(" + roman(1 + static_cast<int>(s.below(12))) +
            ") provides that " + s.pick(kClauses) + "; provided, however, that the amount shall not exceed $" +
            std::to_string(1 + s.below(900)) + "," + std::to_string(100 + s.below(900)) + ".";
      break;
    case 5:
      out = std::string("On ") + std::to_string(1 + s.below(28)) + " " +
            (s.chance(50) ? "March" : "September") + " " + std::to_string(1950 + s.below(75)) + ", " +
            s.pick(kSubjects) + " filed a petition, and revenue increased by " + std::to_string(s.below(40)) + "." +
            std::to_string(s.below(10)) + "% over the prior fiscal year.";
      break;
    case 7:
    case 8:
    case 9:
      out = prose(s, lexicon);
      break;
    default:
      out = std::string("“") + s.pick(kClauses) + ",” " + s.pick(kSubjects) + " " + s.pick(kVerbs) + ", citing " +
            s.pick(kStatutes) + " and " + s.pick(kRules) + "; a point the parties do not dispute.";
      break;
  }
  return out;
}

std::string document(Source& s, const std::vector<std::string>& lexicon, std::size_t target_bytes) {
  std::string doc;
  doc += std::string(s.pick(kParties)) + " v. " + s.pick(kParties) + "\n\n";
  while (doc.size() < target_bytes) {
    if (s.chance(15)) doc += std::string(s.pick(kHeadings)) + "\n\n";
    const auto sentences = 2 + s.below(5);
    if (s.chance(20)) doc += "(" + roman(1 + static_cast<int>(s.below(9))) + ") ";
    for (std::uint32_t i = 0; i < sentences; ++i) {
      if (i) doc += ' ';
      doc += sentence(s, lexicon);
    }
    doc += "\n\n";
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s OUT_DIR [TOTAL_BYTES] [SEED]\n", argv[0]);
    return 1;
  }
  const std::filesystem::path out_dir = argv[1];
  const std::size_t total = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 5'000'000;
  const auto seed = static_cast<std::uint32_t>(argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 1789);

  std::filesystem::create_directories(out_dir);
  Source s(seed);
  const auto lexicon = make_lexicon(s, 30'000);
  std::size_t written = 0;
  for (int index = 0; written < total; ++index) {
    const std::size_t size = 20'000 + s.below(60'000);
    const std::string doc = document(s, lexicon, std::min(size, total - written));
    char name[32];
    std::snprintf(name, sizeof name, "doc_%04d.txt", index);
    std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!f) {
      std::fprintf(stderr, "cannot write %s\n", (out_dir / name).c_str());
      return 2;
    }
    f << doc;
    written += doc.size();
  }
  return 0;
}
