#include "mck/nfdata.hpp"

#include <fstream>
#include <sstream>

namespace mck {

QSeries NewformRecord::q_expansion(long prec) const {
  require(prec - 1 <= nmax(), "q_expansion: record too short for requested precision");
  QSeries f(hecke_field, 1, prec);
  for (long n = 1; n < prec; ++n) f.set(n, an[(size_t)n]);
  return f;
}

std::vector<QQ> parse_poly_expr(const std::string& text, char symbol) {
  // sum of terms; term = [sign] [rational] ['*'] [symbol ['^' k]]
  std::vector<QQ> out;
  auto bump = [&](size_t deg, const QQ& v) {
    if (out.size() <= deg) out.resize(deg + 1, QQ(0));
    out[deg] += v;
  };
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && isspace((unsigned char)text[i])) ++i; };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else {
      require(first, "parse_poly_expr: expected +/- between terms");
    }
    first = false;
    // optional rational
    QQ coef = 1;
    bool have_coef = false;
    size_t start = i;
    while (i < text.size() && (isdigit((unsigned char)text[i]) || text[i] == '/')) ++i;
    if (i > start) {
      coef = QQ(text.substr(start, i - start));
      coef.canonicalize();
      have_coef = true;
    }
    skip_ws();
    if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
    size_t deg = 0;
    if (i < text.size() && text[i] == symbol) {
      ++i;
      deg = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        size_t s2 = i;
        while (i < text.size() && isdigit((unsigned char)text[i])) ++i;
        require(i > s2, "parse_poly_expr: exponent expected");
        deg = std::stoul(text.substr(s2, i - s2));
      }
    } else {
      require(have_coef, "parse_poly_expr: empty term");
    }
    bump(deg, sign * coef);
    skip_ws();
  }
  if (out.empty()) out.push_back(QQ(0));
  return out;
}

std::string format_poly_expr(const std::vector<QQ>& coeffs, char symbol) {
  std::ostringstream os;
  bool first = true;
  for (size_t d = coeffs.size(); d-- > 0;) {
    const QQ& c = coeffs[d];
    if (c == 0) continue;
    QQ a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (d == 0 || a != 1) {
      if (d == 0 || a != -1 || !first) os << a.get_str();
      if (d > 0) os << "*";
    }
    if (d >= 1) {
      os << symbol;
      if (d >= 2) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

struct FieldSpec {
  NFPtr F;
  NFElement t;  // image of the generator symbol
};

FieldSpec field_from_poly(const std::vector<QQ>& mp) {
  int deg = (int)mp.size() - 1;
  require(deg >= 1 && mp[deg] == 1, "nfdata: field_poly must be monic");
  if (deg == 1) {
    auto F = NumberField::rational();
    return {F, nf(F, -mp[0])};
  }
  require(deg == 2, "nfdata: only degree <= 2 Hecke fields supported");
  // t^2 + b t + c = 0 -> t = (-b + sqrt(b^2 - 4c))/2
  QQ b = mp[1], c = mp[0];
  QQ disc = b * b - 4 * c;
  require(disc != 0, "nfdata: field_poly not separable");
  // disc = d * s^2 with d squarefree
  ZZ num = disc.get_num(), den = disc.get_den();
  // scale: disc = (num*den)/den^2
  ZZ nd = num * den;
  long d = squarefree_part(nd.get_si());
  auto F = NumberField::quadratic(d);
  // sqrt(disc) = sqrt(d) * s where s^2 = disc/d
  QQ s2 = disc / d;
  // s = sqrt(s2): rational
  ZZ sq_num, sq_den;
  mpz_sqrt(sq_num.get_mpz_t(), s2.get_num().get_mpz_t());
  mpz_sqrt(sq_den.get_mpz_t(), s2.get_den().get_mpz_t());
  require(sq_num * sq_num == s2.get_num() && sq_den * sq_den == s2.get_den(),
          "nfdata: discriminant square part not exact");
  QQ s = QQ(sq_num) / QQ(sq_den);
  NFElement sqrt_disc = s * nf_gen(F);
  NFElement t = QQ(1) / 2 * (nf(F, -b) + sqrt_disc);
  // verify
  NFElement chk = t * t + b * t + nf(F, c);
  require(chk.is_zero(), "nfdata: generator image verification failed");
  return {F, t};
}

NFElement eval_poly_at(const std::vector<QQ>& coeffs, const NFElement& t) {
  NFElement acc = nf_zero(t.F);
  for (size_t d = coeffs.size(); d-- > 0;) acc = acc * t + nf(t.F, coeffs[d]);
  return acc;
}

}  // namespace

NewformRecord nfdata_parse(const std::string& text) {
  NewformRecord rec;
  std::istringstream in(text);
  std::string line;
  enum class Block { None, CharValues, Coeffs, AL, Local };
  Block block = Block::None;
  long char_order = 1;
  std::vector<std::pair<long, long>> char_vals;  // generator -> exponent of z
  std::map<long, std::vector<QQ>> coeff_lines, al_lines;
  std::map<long, std::pair<std::string, long>> local_lines;
  std::vector<QQ> field_poly{QQ(0), QQ(1)};
  int lineno = 0;
  bool ended = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line == "end") { ended = true; break; }
    if (line == "char_values:") { block = Block::CharValues; continue; }
    if (line == "coeffs:") { block = Block::Coeffs; continue; }
    if (line == "al:") { block = Block::AL; continue; }
    if (line == "local:") { block = Block::Local; continue; }
    auto colon = line.find(':');
    require(colon != std::string::npos,
            "nfdata: bad line " + std::to_string(lineno) + ": " + line);
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    auto vb = val.find_first_not_of(" \t");
    val = vb == std::string::npos ? "" : val.substr(vb);
    bool header_key = key == "label" || key == "level" || key == "weight" ||
                      key == "char_modulus" || key == "char_order" || key == "field_poly";
    if (header_key) {
      block = Block::None;
      if (key == "label") rec.label = val;
      else if (key == "level") rec.level = std::stol(val);
      else if (key == "weight") rec.weight = std::stoi(val);
      else if (key == "char_modulus") rec.character.modulus = std::stol(val);
      else if (key == "char_order") char_order = std::stol(val);
      else if (key == "field_poly") field_poly = parse_poly_expr(val, 'x');
      continue;
    }
    long n = std::stol(key);
    switch (block) {
      case Block::CharValues: {
        // value "z^k" or "1" or "-1"
        long ex = 0;
        if (val == "1") ex = 0;
        else if (val == "-1") ex = char_order / 2;
        else {
          require(val[0] == 'z', "nfdata: char value must be power of z");
          ex = val.size() > 1 && val[1] == '^' ? std::stol(val.substr(2)) : 1;
        }
        char_vals.emplace_back(n, ex);
        break;
      }
      case Block::Coeffs:
        coeff_lines[n] = parse_poly_expr(val, 't');
        break;
      case Block::AL:
        al_lines[n] = parse_poly_expr(val, 't');
        break;
      case Block::Local: {
        std::istringstream vs(val);
        std::string type;
        vs >> type;
        long r = 0;
        std::string extra;
        if (vs >> extra) {
          require(extra.rfind("r=", 0) == 0, "nfdata: bad local annotation");
          r = std::stol(extra.substr(2));
        }
        local_lines[n] = {type, r};
        break;
      }
      default:
        throw error("nfdata: line " + std::to_string(lineno) + " outside any block: " + line);
    }
  }
  require(ended, "nfdata: missing 'end'");
  require(rec.level >= 1 && rec.weight == 2, "nfdata: bad level/weight");

  // character
  if (rec.character.modulus <= 1) {
    rec.character = DirichletCharacter::trivial(1);
  } else {
    long M = rec.character.modulus;
    DirichletCharacter chi = DirichletCharacter::trivial(M);
    chi.order = char_order;
    for (auto& [g, ex] : char_vals) {
      bool matched = false;
      for (auto& l : chi.locals) {
        if (imod(g, l.pk) != imod(l.gen, l.pk)) continue;
        l.e = imod(ex, char_order);
        matched = true;
      }
      require(matched, "nfdata: char generator must be the canonical local generator");
    }
    rec.character = chi;
  }

  auto fs = field_from_poly(field_poly);
  rec.hecke_field = fs.F;
  rec.t_image = fs.t;

  long nmax = coeff_lines.empty() ? 0 : coeff_lines.rbegin()->first;
  rec.an.assign((size_t)nmax + 1, nf_zero(fs.F));
  for (long n = 1; n <= nmax; ++n) {
    auto it = coeff_lines.find(n);
    require(it != coeff_lines.end(), "nfdata: coefficient gap at n=" + std::to_string(n));
    rec.an[(size_t)n] = eval_poly_at(it->second, fs.t);
  }
  for (auto& [pp, poly] : al_lines) rec.al[pp] = eval_poly_at(poly, fs.t);
  for (auto& [pp, tv] : local_lines) {
    NewformRecord::LocalInfo li;
    const std::string& ty = tv.first;
    if (ty == "steinberg") li.type = LocalType::Steinberg;
    else if (ty == "twist_steinberg") li.type = LocalType::TwistSteinberg;
    else if (ty == "supercuspidal") li.type = LocalType::Supercuspidal;
    else if (ty == "ramified_ps") li.type = LocalType::RamifiedPS;
    else throw error("nfdata: unknown local type " + ty);
    li.theta_r = tv.second;
    rec.local[pp] = li;
  }
  return rec;
}

NewformRecord nfdata_load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "nfdata_load: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  NewformRecord rec = nfdata_parse(ss.str());
  nfdata_validate(rec);
  return rec;
}

namespace {
std::vector<QQ> nf_to_poly(const NFElement& v, const NFElement& t) {
  // write v = a + b t for quadratic t (or constant for rational)
  if (v.F->deg == 1) return {v.c[0]};
  // v = c0 + c1 * sqrt(d); t = t0 + t1 sqrt(d): b = c1/t1, a = c0 - b t0
  QQ t0 = t.c[0], t1 = t.c[1];
  require(t1 != 0, "nf_to_poly: generator is rational");
  QQ b = v.c[1] / t1;
  QQ a = v.c[0] - b * t0;
  return {a, b};
}
}  // namespace

std::string nfdata_serialize(const NewformRecord& rec) {
  std::ostringstream os;
  os << "label: " << rec.label << "\n";
  os << "level: " << rec.level << "\n";
  os << "weight: " << rec.weight << "\n";
  os << "char_modulus: " << rec.character.modulus << "\n";
  if (rec.character.modulus > 1) {
    os << "char_order: " << rec.character.order << "\n";
    os << "char_values:\n";
    for (auto& l : rec.character.locals)
      os << l.gen << ": z^" << l.e << "\n";
  }
  // field poly: minimal polynomial of t
  if (rec.hecke_field->deg == 1) {
    os << "field_poly: x\n";
  } else {
    // t = t0 + t1 sqrt(d): min poly x^2 - 2 t0 x + (t0^2 - t1^2 d)
    QQ t0 = rec.t_image.c[0], t1 = rec.t_image.c[1];
    QQ b = -2 * t0, c = t0 * t0 - t1 * t1 * rec.hecke_field->param;
    os << "field_poly: " << format_poly_expr({c, b, QQ(1)}, 'x') << "\n";
  }
  os << "coeffs:\n";
  for (long n = 1; n <= rec.nmax(); ++n)
    os << n << ": " << format_poly_expr(nf_to_poly(rec.an[(size_t)n], rec.t_image), 't') << "\n";
  if (!rec.al.empty()) {
    os << "al:\n";
    for (auto& [p, v] : rec.al)
      os << p << ": " << format_poly_expr(nf_to_poly(v, rec.t_image), 't') << "\n";
  }
  if (!rec.local.empty()) {
    os << "local:\n";
    for (auto& [p, li] : rec.local) {
      os << p << ": ";
      switch (li.type) {
        case LocalType::Steinberg: os << "steinberg"; break;
        case LocalType::TwistSteinberg: os << "twist_steinberg"; break;
        case LocalType::Supercuspidal: os << "supercuspidal r=" << li.theta_r; break;
        case LocalType::RamifiedPS: os << "ramified_ps"; break;
      }
      os << "\n";
    }
  }
  os << "end\n";
  return os.str();
}

void nfdata_save(const NewformRecord& rec, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "nfdata_save: cannot open " + path);
  out << nfdata_serialize(rec);
}

void nfdata_validate(const NewformRecord& rec) {
  require(rec.nmax() >= 1, "nfdata: no coefficients");
  require(rec.an[1] == nf_one(rec.hecke_field), "nfdata: a_1 must be 1");
  // multiplicativity spot checks on coprime pairs
  Rng rng(0x5eedULL + (uint64_t)rec.level);
  long n = rec.nmax();
  int done = 0;
  for (int t = 0; t < 400 && done < 40; ++t) {
    long a = 2 + rng.uniform(n - 2), b = 2 + rng.uniform(n - 2);
    if (a * b > n || igcd(a, b) != 1) continue;
    require(rec.an[(size_t)(a * b)] == rec.an[(size_t)a] * rec.an[(size_t)b],
            "nfdata: multiplicativity failure at " + std::to_string(a) + "*" +
                std::to_string(b) + " (" + rec.label + ")");
    done++;
  }
  for (auto& [p, v] : rec.al)
    require(!v.is_zero(), "nfdata: zero Atkin-Lehner pseudo-eigenvalue");
}

}  // namespace mck
