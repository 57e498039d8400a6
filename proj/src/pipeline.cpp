#include "mck/pipeline.hpp"

#include <filesystem>
#include <fstream>

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>
#include <json.hpp>

namespace mck {

namespace {

DirichletCharacter char_prime_part(const NewformRecord& rec, long p) {
  if (rec.character.modulus % p != 0) return DirichletCharacter::trivial(p);
  return decompose(rec.character).at(p);
}

}  // namespace

QSeries degeneracy_scale_only(const NewformRecord& rec, const QSeries& f, long p) {
  // chi(p)^{-1} f(z/p) / p ; chi evaluated away from its modulus
  NFElement c = nf_one(f.F);
  if (rec.character.modulus > 1) {
    require(rec.character.modulus % p != 0, "scale_only: character ramified at p");
    c = nf_inv(rec.character.evaluate(p));
  }
  QSeries g = qs_scale_variable(f, p);
  return qs_scal(QQ(1) / p, qs_scal(c, g));
}

QSeries degeneracy_al_combine(const NewformRecord& rec, const QSeries& f, long p) {
  auto it = rec.al.find(p);
  require(it != rec.al.end(), "al_combine: missing Atkin-Lehner pseudo-eigenvalue at p");
  QSeries g = qs_scale_variable(f, p);
  return qs_add(f, qs_scal(QQ(1) / p, qs_scal(it->second, g)));
}

AtkinLiResult atkin_li(const NewformRecord& rec, long p) {
  require(rec.character.modulus % p == 0,
          "atkin_li: character unramified at p (use the recorded eigenvalue)");
  DirichletCharacter chi_p = char_prime_part(rec, p);
  require(!chi_p.is_trivial(), "atkin_li: trivial p-part");
  NFElement ap = rec.coeff(p);
  require(!ap.is_zero(), "atkin_li: a_p = 0");
  // a_p must have absolute value sqrt(p) (the newform property for a
  // p-primitive form with ramified nebentype); abort otherwise
  {
    long sigma = ap.F->kind == NumberField::Kind::Cyclotomic ? ap.F->param - 1 : 1;
    NFElement norm = ap.F->deg == 1 ? ap * ap : ap * galois_conjugate(ap, sigma);
    require(norm == nf(ap.F, QQ(p)), "atkin_li: |a_p|^2 != p, not a valid twist input");
  }
  NFElement g = gauss_sum(chi_p, AdditiveCharacter(p, 1));
  NFPtr F = nf_join(g.F, ap.F);
  NFElement lambda = nf_embed(g, F) / nf_embed(ap, F);

  NewformRecord tw = rec;
  tw.label = rec.label + "~w" + std::to_string(p);
  DirichletCharacter chibar = chi_p.inverse();
  NFPtr FT = nf_join(F, chibar.value_field());
  // a~_p = p / a_p, a~_{p^k} = (p/a_p)^k, a~_n = chibar(n) a_n for (n,p)=1
  NFElement ap_t = nf(FT, QQ(p)) / nf_embed(ap, FT);
  std::vector<NFElement> an((size_t)rec.nmax() + 1, nf_zero(FT));
  for (long n = 1; n <= rec.nmax(); ++n) {
    long v = 0, m = n;
    while (m % p == 0) { m /= p; v++; }
    NFElement val = nf_embed(chibar.evaluate(m), FT) * nf_embed(rec.an[(size_t)m], FT);
    if (v > 0) val = val * nf_pow(ap_t, v);
    an[(size_t)n] = val;
  }
  tw.hecke_field = FT;
  tw.t_image = nf_embed(rec.t_image, FT);
  tw.an = std::move(an);
  tw.character = rec.character.inverse();  // p-part inverted; good enough for reuse
  // pseudo-eigenvalue consistency: lambda(f) lambda(f~) = chi_p(-1)
  NFElement g_bar = gauss_sum(chibar, AdditiveCharacter(p, 1));
  NFElement lambda_t = nf_embed(g_bar, FT) / nf_embed(ap_t, FT);
  NFElement prod = nf_embed(lambda, FT) * lambda_t;
  require(prod == nf_embed(chi_p.chi_minus_one(), FT),
          "atkin_li: pseudo-eigenvalue consistency failed");
  return {lambda, tw};
}

namespace {

// internal representation of the assembly state: sum of c * g(z/d)
struct Term {
  NFElement c;
  const NewformRecord* rec;
  std::shared_ptr<NewformRecord> owned;  // for twisted records
  long d = 1;
};

QSeries term_series(const Term& t, long prec_num, long den) {
  // c * g(z/d) as a series with exponent denominator den (d | den)
  require(den % t.d == 0, "term_series: denominator mismatch");
  long scale = den / t.d;
  // coefficients needed: n with n * scale < prec_num
  long need = (prec_num + scale - 1) / scale;
  require(t.rec->nmax() >= need - 1,
          "assemble: record " + t.rec->label + " too short (need a_n to n=" +
              std::to_string(need - 1) + ")");
  QSeries f(t.rec->hecke_field, den, prec_num);
  for (long n = 1; n * scale < prec_num && n <= t.rec->nmax(); ++n)
    f.set(n * scale, t.rec->an[(size_t)n]);
  return qs_scal(t.c, f);
}

}  // namespace

AssembledForm assemble(const NewformRecord& rec, const LevelLabel& labels, long prec) {
  std::vector<ProvenanceStep> log;
  std::vector<Term> terms;
  terms.push_back(Term{nf_one(rec.hecke_field), &rec, nullptr, 1});
  long final_den = 1;
  std::vector<long> ns_plus_primes;

  // Step 1 + Step 2 bookkeeping, prime by prime in increasing order
  for (auto& [p, lab] : labels.at) {
    if (lab == Label::Borel) continue;
    long vp = 0, N = rec.level;
    while (N % p == 0) { N /= p; vp++; }
    bool ramified_ps = rec.character.modulus % p == 0;
    if (ramified_ps) {
      require(lab == Label::NonsplitPlus,
              "assemble: ramified principal series expects an ns+ label");
      // Step 2: w_p then 1/p-scaling, with the commuting character factors
      auto al = atkin_li(rec, p);
      auto tw = std::make_shared<NewformRecord>(al.twisted);
      std::vector<Term> next;
      for (auto& t : terms) {
        // g(z/d) | w_p = eps(d)^{?} lambda_p g~(z/d); our terms all share the
        // base record (scalings commute up to eps(d))
        NFElement eps_d = t.d == 1 ? nf_one(rec.hecke_field)
                                   : rec.character.evaluate(t.d % rec.character.modulus);
        require(!eps_d.is_zero(), "assemble: scaling divisor meets the conductor");
        NFPtr F = nf_join(nf_join(t.c.F, al.lambda.F), eps_d.F);
        Term nt;
        nt.c = nf_embed(t.c, F) * nf_embed(al.lambda, F) * nf_embed(eps_d, F);
        nt.owned = tw;
        nt.rec = tw.get();
        nt.d = t.d;
        next.push_back(nt);
      }
      terms = std::move(next);
      log.push_back({"wp_twist", p});
      // now scale by 1/p
      for (auto& t : terms) {
        t.c = QQ(1) / p * t.c;
        t.d *= p;
      }
      log.push_back({"scale_only", p});
      final_den *= p;
      ns_plus_primes.push_back(p);
      continue;
    }
    // supercuspidal / Steinberg-type local factors
    if (vp >= 2) {
      // scale only
      for (auto& t : terms) {
        NFElement c = nf_one(rec.hecke_field);
        if (rec.character.modulus > 1 && rec.character.modulus % p != 0)
          c = nf_inv(rec.character.evaluate(p));
        t.c = QQ(1) / p * (t.c * c);
        t.d *= p;
      }
      log.push_back({"scale_only", p});
      final_den *= p;
    } else {
      require(vp == 1, "assemble: label at a prime not dividing the level");
      auto it = rec.al.find(p);
      require(it != rec.al.end(), "assemble: missing lambda_p for al_combine");
      std::vector<Term> next;
      for (auto& t : terms) {
        next.push_back(t);
        Term s = t;
        NFPtr F = nf_join(t.c.F, it->second.F);
        s.c = QQ(1) / p * (nf_embed(t.c, F) * nf_embed(it->second, F));
        s.d = t.d * p;
        next.push_back(s);
      }
      terms = std::move(next);
      log.push_back({"al_combine", p});
      final_den *= p;
    }
    if (lab == Label::NonsplitPlus) ns_plus_primes.push_back(p);
  }

  // materialize the series
  long den = final_den;
  long prec_num = prec;
  QSeries acc(rec.hecke_field, den, prec_num);
  for (auto& t : terms) acc = qs_add(acc, term_series(t, prec_num, den));

  // Step 3: residue recombination at ns+ primes
  for (long p : ns_plus_primes) {
    auto parts = qs_residue_split(acc, p);
    long a = p - 1;  // -1 is a non-square for p = 3, 7 (p = 3 mod 4)
    if (legendre(-1, p) != -1) a = smallest_nonsquare(p);
    // the isotypic convention pins psi(1) = zeta_p^{-1}
    AdditiveCharacter psi(p, -1);
    RepVector coeffs;
    auto li = rec.local.find(p);
    require(li != rec.local.end(), "assemble: missing local annotation at p");
    if (li->second.type == LocalType::Supercuspidal) {
      CuspidalRep crep(p, a, li->second.theta_r, psi);
      require(crep.valid(), "assemble: invalid theta parameter");
      coeffs = cusp_nonsplit_fixed(crep, TorusSpec::nonsplit(p, a));
    } else {
      // ramified principal series: chi_p-based closed form on P^1 indices;
      // the recombination uses the A_psi coefficients of the T'-fixed vector
      DirichletCharacter chi_p = char_prime_part(rec, p);
      // the vector lives on P^1; the residue pieces correspond to the
      // nontrivial psi-isotypic components plus the 0-class piece
      PrincipalSeriesRep prep(p, chi_p);
      RepVector fix = ps_nonsplit_fixed(prep, TorusSpec::nonsplit(p, a));
      // convert function values to psi-isotypic coefficients:
      // A_psi = sum_x f(x) psi^{-1}(x) relative to the pinned psi
      coeffs.assign((size_t)p, nf_zero(prep.F));
      NFPtr FF = nf_join(prep.F, NumberField::cyclotomic(p));
      for (long i = 0; i < p; ++i) {
        NFElement s = nf_zero(FF);
        for (long x = 0; x < p; ++x) {
          // psi_i(x) = psi(i x); coefficient of the i-isotypic piece
          NFElement ps = nf_pow(nf_zeta(FF, p), imod(-psi.k * i * x, p));
          s = s + nf_embed(fix[x], FF) * ps;
        }
        coeffs[(size_t)i] = QQ(1) / p * s;
      }
      // in the principal-series case the delta_inf component carries the
      // 0-graded piece with coefficient f(inf) = 1 folded into coeffs[0]
      coeffs[0] = coeffs[0] + nf_embed(fix[p], FF);
    }
    // recombine: cuspidal: sum over x in F_p^x of coeff[x] f_x where the
    // closed form is delta_1 + sum A_x delta_x; principal series: includes 0
    QSeries out(acc.F, acc.den, acc.prec);
    if (li->second.type == LocalType::Supercuspidal) {
      for (long x = 1; x < p; ++x) {
        NFElement cx = coeffs[(size_t)(x - 1)];
        if (cx.is_zero()) continue;
        out = qs_add(out, qs_scal(cx, parts[(size_t)x]));
      }
    } else {
      for (long x = 0; x < p; ++x) {
        NFElement cx = coeffs[(size_t)x];
        if (cx.is_zero()) continue;
        out = qs_add(out, qs_scal(cx, parts[(size_t)x]));
      }
    }
    acc = out;
    log.push_back({"residue_recombine", p});
  }

  // normalization: lowest nonzero coefficient becomes 1
  if (!acc.c.empty()) {
    NFElement lead = acc.c.begin()->second;
    acc = qs_scal(nf_inv(lead), acc);
    log.push_back({"normalize", 0});
  }
  return {acc, log};
}

AssembledForm assemble_replay(const NewformRecord& rec, const LevelLabel& labels,
                              const std::vector<ProvenanceStep>& log, long prec) {
  AssembledForm again = assemble(rec, labels, prec);
  require(again.log.size() == log.size(), "assemble_replay: log mismatch");
  for (size_t i = 0; i < log.size(); ++i)
    require(again.log[i].op == log[i].op && again.log[i].p == log[i].p,
            "assemble_replay: step mismatch");
  return again;
}

std::vector<QSeries> al_fixed_space(const std::vector<NewformRecord>& constituents,
                                    long N, long Q, long prec) {
  require(N % Q == 0 && igcd(Q, N / Q) == 1, "al_fixed_space: Q must exactly divide N");
  std::vector<QSeries> basis;
  for (const auto& rec : constituents) {
    long M = rec.level;
    require(N % M == 0, "al_fixed_space: level does not divide N");
    long R = N / M;
    require(squarefree_part(R) == R, "al_fixed_space: only squarefree N/M supported");
    std::vector<long> divs;
    for (long d = 1; d <= R; ++d)
      if (R % d == 0) divs.push_back(d);
    int dim = (int)divs.size();
    auto idx = [&](long d) {
      return (int)(std::find(divs.begin(), divs.end(), d) - divs.begin());
    };
    // W_Q as a matrix on the span {B_d f}
    NFPtr F = rec.hecke_field;
    Mat<NFElement> W(dim, dim, nf_zero(F));
    for (int i = 0; i < dim; ++i) W.at(i, i) = nf_one(F);
    for (auto& [p, e] : factorize(Q)) {
      require(e == 1, "al_fixed_space: only squarefree Q supported");
      Mat<NFElement> Wp(dim, dim, nf_zero(F));
      if (M % p == 0) {
        auto it = rec.al.find(p);
        require(it != rec.al.end(), "al_fixed_space: missing lambda_" + std::to_string(p) +
                                        " for " + rec.label);
        for (int i = 0; i < dim; ++i) Wp.at(i, i) = nf_embed(it->second, F);
      } else {
        for (long d : divs) {
          if (d % p == 0) {
            // W_p(B_d f) = (1/p) B_{d/p} f
            Wp.at(idx(d / p), idx(d)) = nf(F, QQ(1) / p);
          } else {
            // W_p(B_d f) = p B_{dp} f
            Wp.at(idx(d * p), idx(d)) = nf(F, QQ(p));
          }
        }
      }
      // W = Wp * W
      Mat<NFElement> R2(dim, dim, nf_zero(F));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          NFElement s = nf_zero(F);
          for (int k = 0; k < dim; ++k) s = s + Wp.at(i, k) * W.at(k, j);
          R2.at(i, j) = s;
        }
      W = R2;
    }
    // +1 eigenspace: kernel of (W - I)
    Mat<NFElement> A(dim, dim, nf_zero(F));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        A.at(i, j) = W.at(i, j);
        if (i == j) A.at(i, j) = A.at(i, j) - nf_one(F);
      }
    for (auto& v : kernel_basis(A)) {
      // build the series sum_d v_d f(d z)
      QSeries s(F, 1, prec);
      for (int k = 0; k < dim; ++k) {
        if (v[(size_t)k].is_zero()) continue;
        long d = divs[(size_t)k];
        for (long n = 1; n * d < prec && n <= rec.nmax(); ++n) {
          NFElement cur = s.coeff(n * d);
          s.set(n * d, cur + v[(size_t)k] * rec.an[(size_t)n]);
        }
      }
      if (!s.c.empty()) s = qs_scal(nf_inv(s.c.begin()->second), s);
      basis.push_back(s);
    }
  }
  return basis;
}

NewformRecord newform_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  // convert to nfdata text and reuse the parser
  std::ostringstream os;
  os << "label: " << j.at("label").get<std::string>() << "\n";
  os << "level: " << j.at("level").get<long>() << "\n";
  os << "weight: " << j.at("weight").get<int>() << "\n";
  os << "char_modulus: " << j.value("char_modulus", 1L) << "\n";
  if (j.value("char_modulus", 1L) > 1) {
    os << "char_order: " << j.at("char_order").get<long>() << "\n";
    os << "char_values:\n";
    for (auto& cv : j.at("char_values"))
      os << cv.at(0).get<long>() << ": z^" << cv.at(1).get<long>() << "\n";
  }
  {
    os << "field_poly: ";
    auto fp = j.at("field_poly");
    bool first = true;
    for (size_t i = fp.size(); i-- > 0;) {
      long c = fp[i].get<long>();
      if (c == 0 && !(i == 0 && first)) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      long ac = c < 0 ? -c : c;
      if (i == 0 || ac != 1) os << ac << (i > 0 ? "*" : "");
      if (i >= 1) { os << "x"; if (i >= 2) os << "^" << i; }
    }
    os << "\n";
  }
  os << "coeffs:\n";
  long n = 1;
  for (auto& an : j.at("an")) {
    os << n << ": ";
    if (an.is_array()) {
      os << an.at(0).get<std::string>();
      if (an.size() > 1) os << " + " << an.at(1).get<std::string>() << "*t";
    } else {
      os << an.get<long>();
    }
    os << "\n";
    ++n;
  }
  if (j.contains("al")) {
    os << "al:\n";
    for (auto& [key, val] : j.at("al").items()) os << key << ": " << val.get<long>() << "\n";
  }
  if (j.contains("local")) {
    os << "local:\n";
    for (auto& [key, val] : j.at("local").items())
      os << key << ": " << val.get<std::string>() << "\n";
  }
  os << "end\n";
  NewformRecord rec = nfdata_parse(os.str());
  nfdata_validate(rec);
  return rec;
}

NewformRecord fetch_newform(const std::string& label, const FetchConfig& cfg) {
  namespace fs = std::filesystem;
  require(!cfg.cache_dir.empty(), "fetch_newform: cache directory required");
  fs::create_directories(cfg.cache_dir);
  fs::path cached = fs::path(cfg.cache_dir) / (label + ".nfdata");
  if (fs::exists(cached)) return nfdata_load(cached.string());
  require(!cfg.offline, "fetch_newform: offline and not cached: " + label);

  // split endpoint into host and path prefix
  std::string ep = cfg.endpoint;
  require(ep.rfind("http://", 0) == 0, "fetch_newform: endpoint must be http://");
  std::string rest = ep.substr(7);
  auto slash = rest.find('/');
  std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : rest.substr(slash);
  httplib::Client cli(("http://" + host).c_str());
  cli.set_read_timeout(10, 0);
  auto res = cli.Get((prefix + "/" + label + ".json").c_str());
  require(res && res->status == 200,
          "fetch_newform: HTTP error for " + label +
              (res ? " (status " + std::to_string(res->status) + ")" : " (no response)"));
  NewformRecord rec;
  try {
    rec = newform_from_json(res->body);
  } catch (std::exception& e) {
    throw error(std::string("fetch_newform: schema conversion failed: ") + e.what() +
                "; payload head: " + res->body.substr(0, 200));
  }
  // atomic write-then-rename
  fs::path tmp = cached;
  tmp += ".tmp";
  nfdata_save(rec, tmp.string());
  fs::rename(tmp, cached);
  return rec;
}

}  // namespace mck
