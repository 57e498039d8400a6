#pragma once
// Generation of the bundled newform fixtures:
//   - elliptic-curve newforms by point counting,
//   - the level-35 quadratic orbit (seeded by the printed basis, extended by
//     the canonical-conic recurrence, cross-checked against point counts of
//     X_0(35) realized as a fiber product over the j-line),
//   - the level-63 quadratic orbit (inner-twist structure; split primes from
//     X_0(63) point counts, inert primes from counts + canonical quadric
//     relations of the genus-5 canonical embedding).

#include "mck/ec.hpp"
#include "mck/nfdata.hpp"
#include "mck/recognize.hpp"

namespace mck {

// Eta-quotient hauptmodul series for X_0(m), m in {5, 7, 9}.
QSeries x0_hauptmodul_series(long m, long prec);
// j as an exactly verified rational function of that hauptmodul.
RationalFn x0_j_formula(long m);

// #X_0(m1*m2)(F_q) for coprime m1, m2 in {5,7,9}, q = p or p^2 (odd p of good
// reduction, p not dividing 6*m1*m2). Smooth-model count via the fiber
// product over the j-line with branch resolution at the singular points.
long count_x0_product_points(long m1, long m2, int64_t p, int f);

// Elliptic newform record from a curve model.
NewformRecord elliptic_record(const std::string& label, long level, const ECCurve& e,
                              long nmax,
                              const std::map<long, NewformRecord::LocalInfo>& local);

// The two bundled quadratic orbits.
NewformRecord orbit35_record(long nmax);
NewformRecord orbit63_record(long nmax);

// Quadratic twist of a rational-coefficient record by the character mod 3
// (used for the level-63 rational newform).
NewformRecord twist_record_by_chi3(const NewformRecord& rec, const std::string& label,
                                   long new_level);

// Bundled curve models (verified against printed expansions in tests).
ECCurve curve_15a();
ECCurve curve_21a();
ECCurve curve_35a();
ECCurve curve_49a();
ECCurve curve_75_f2();
ECCurve curve_75_f3();
ECCurve curve_105a();

}  // namespace mck
