#pragma once
// Newform records and the line-oriented nfdata v1 file format.
//
// Grammar (UTF-8, '#' starts a comment, blank lines ignored):
//   label: <string>
//   level: <integer>
//   weight: 2
//   char_modulus: <integer>            (1 for trivial nebentypus)
//   char_order: <integer>              (present iff modulus > 1)
//   char_values:                       (block, iff modulus > 1; lines "g: z^k",
//                                       z the fixed primitive char_order-th root)
//   field_poly: <monic poly in x>      (degree 1 or 2)
//   coeffs:                            (block of lines "n: <poly in t>", t a
//                                       root of field_poly; n = 1..nmax dense)
//   al:                                (block of lines "p: <poly in t>")
//   local:                             (block of lines
//                                       "p: steinberg" | "p: twist_steinberg" |
//                                       "p: supercuspidal r=<k>" | "p: ramified_ps")
//   end

#include "mck/chars.hpp"
#include "mck/qseries.hpp"

namespace mck {

enum class LocalType { Steinberg, TwistSteinberg, Supercuspidal, RamifiedPS };

struct NewformRecord {
  std::string label;
  long level = 0;
  int weight = 2;
  DirichletCharacter character;  // modulus 1 = trivial
  NFPtr hecke_field;
  NFElement t_image;                 // the generator t as an element of hecke_field
  std::vector<NFElement> an;         // an[n] for 1 <= n <= nmax; an[0] unused
  std::map<long, NFElement> al;      // Atkin-Lehner pseudo-eigenvalues
  struct LocalInfo {
    LocalType type = LocalType::Steinberg;
    long theta_r = 0;  // supercuspidal theta exponent parameter
  };
  std::map<long, LocalInfo> local;

  long nmax() const { return (long)an.size() - 1; }
  NFElement coeff(long n) const {
    require(n >= 1 && n <= nmax(), "NewformRecord: coefficient out of range");
    return an[(size_t)n];
  }
  // q-expansion sum a_n q^n to O(q^prec)
  QSeries q_expansion(long prec) const;
};

// Parse / serialize / validate.
NewformRecord nfdata_parse(const std::string& text);
NewformRecord nfdata_load(const std::string& path);
std::string nfdata_serialize(const NewformRecord& rec);
void nfdata_save(const NewformRecord& rec, const std::string& path);

// a1 = 1, multiplicativity spot checks, nonzero AL entries.
void nfdata_validate(const NewformRecord& rec);

// Small polynomial-in-one-symbol expression parser used by the format
// ("-3/2*t^2 + t - 1"); returns coefficients c[0..deg].
std::vector<QQ> parse_poly_expr(const std::string& text, char symbol);
std::string format_poly_expr(const std::vector<QQ>& coeffs, char symbol);

}  // namespace mck
