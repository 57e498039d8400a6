#pragma once
// Assembly of q-expansions for vectors with prescribed local level structures
// from newform records: degeneracy maps, the Atkin-Li w_p transform, and
// residue-class reassembly with the closed-form torus-fixed coefficients.

#include "mck/gl2rep.hpp"
#include "mck/nfdata.hpp"

namespace mck {

enum class Label { Borel, SplitPlus, NonsplitPlus };

struct LevelLabel {
  std::map<long, Label> at;  // prime -> label
};

inline LevelLabel parse_labels(const std::string& text) {
  // "3b,5s+,7ns+"
  LevelLabel out;
  size_t i = 0;
  while (i < text.size()) {
    size_t j = text.find(',', i);
    std::string tok = text.substr(i, j == std::string::npos ? std::string::npos : j - i);
    size_t k = 0;
    while (k < tok.size() && isdigit((unsigned char)tok[k])) ++k;
    require(k > 0, "parse_labels: missing prime in " + tok);
    long p = std::stol(tok.substr(0, k));
    std::string lab = tok.substr(k);
    Label l;
    if (lab == "b") l = Label::Borel;
    else if (lab == "s+") l = Label::SplitPlus;
    else if (lab == "ns+") l = Label::NonsplitPlus;
    else throw error("parse_labels: unknown label " + lab);
    out.at[p] = l;
    i = j == std::string::npos ? text.size() : j + 1;
  }
  return out;
}

// Step-1 moves on plain q-expansions.
// scale_only: chi(p)^{-1} f(z/p)/p  (p^2 || N)
QSeries degeneracy_scale_only(const NewformRecord& rec, const QSeries& f, long p);
// al_combine: f + lambda_p f(z/p)/p  (p || N)
QSeries degeneracy_al_combine(const NewformRecord& rec, const QSeries& f, long p);

// Atkin-Li transform at a ramified principal series prime p (p divides the
// character conductor): lambda = g(chi_p)/a_p and the twisted record with
// a~_n = chibar_p(n) a_n for (n,p) = 1, a~_{p^k} = (p/a_p)^k. The pseudo-
// eigenvalue consistency lambda(f) lambda(f~) = chi_p(-1) is verified.
struct AtkinLiResult {
  NFElement lambda;
  NewformRecord twisted;
};
AtkinLiResult atkin_li(const NewformRecord& rec, long p);

struct ProvenanceStep {
  std::string op;  // "scale_only", "al_combine", "wp_twist", "residue_recombine", "normalize"
  long p = 0;
};

struct AssembledForm {
  QSeries series;
  std::vector<ProvenanceStep> log;
};

// Steps 1-3 for one newform record and a label set; prec is the exponent-
// numerator bound relative to the final denominator (exponents n/D with
// n < prec are computed). Fails early if the record is too short.
AssembledForm assemble(const NewformRecord& rec, const LevelLabel& labels, long prec);

// Re-run an assembly log (provenance replay).
AssembledForm assemble_replay(const NewformRecord& rec, const LevelLabel& labels,
                              const std::vector<ProvenanceStep>& log, long prec);

// Basis of the w_Q = +1 eigenspace of the span of all oldform shifts
// {f(dz): d | N/level(f)} of the given records inside S_2(Gamma_0(N)).
// Q must exactly divide N. Vectors are returned with leading coefficient 1.
std::vector<QSeries> al_fixed_space(const std::vector<NewformRecord>& constituents,
                                    long N, long Q, long prec);

// Remote fetch of newform data (JSON schema documented in the repo) with an
// on-disk cache; offline mode reads the cache only.
struct FetchConfig {
  std::string endpoint;   // e.g. "http://host:port/nf"
  std::string cache_dir;  // directory for cached nfdata files
  bool offline = true;
};
NewformRecord fetch_newform(const std::string& label, const FetchConfig& cfg);

// Parse the upstream JSON payload into a record (exposed for tests).
NewformRecord newform_from_json(const std::string& json_text);

}  // namespace mck
