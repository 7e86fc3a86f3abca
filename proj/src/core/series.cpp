#include "core/series.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace qvib {

namespace {

using Poly = std::map<Monomial, ParamSeries>;

ParamSeries zero_series(int order) { return ParamSeries(order + 1, Rational(0)); }

bool is_zero(const ParamSeries& s) {
  return std::all_of(s.begin(), s.end(), [](const Rational& c) { return c == 0; });
}

void add_into(Poly& dst, const Poly& src) {
  for (const auto& [mono, series] : src) {
    auto it = dst.find(mono);
    if (it == dst.end()) {
      dst[mono] = series;
    } else {
      for (std::size_t k = 0; k < series.size(); ++k) it->second[k] += series[k];
    }
  }
}

Poly mul(const Poly& a, const Poly& b, int order) {
  Poly r;
  for (const auto& [ma, sa] : a) {
    for (const auto& [mb, sb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      ParamSeries prod = zero_series(order);
      for (int ka = 0; ka <= order; ++ka) {
        if (static_cast<std::size_t>(ka) >= sa.size() || sa[ka] == 0) continue;
        for (int kb = 0; ka + kb <= order; ++kb) {
          if (static_cast<std::size_t>(kb) >= sb.size() || sb[kb] == 0) continue;
          prod[ka + kb] += sa[ka] * sb[kb];
        }
      }
      auto it = r.find(m);
      if (it == r.end()) {
        r[m] = std::move(prod);
      } else {
        for (int k = 0; k <= order; ++k) it->second[k] += prod[k];
      }
    }
  }
  return r;
}

// dst += coeff * param^shift * p
void add_scaled(Poly& dst, const Poly& p, const Rational& coeff, int shift, int order) {
  for (const auto& [mono, series] : p) {
    auto it = dst.find(mono);
    if (it == dst.end()) it = dst.emplace(mono, zero_series(order)).first;
    for (int k = 0; k + shift <= order; ++k) {
      if (static_cast<std::size_t>(k) >= series.size()) break;
      it->second[k + shift] += coeff * series[k];
    }
  }
}

void prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();)
    it = is_zero(it->second) ? p.erase(it) : std::next(it);
}

Poly constant_poly(int mode_count, const Rational& value, int order) {
  Poly p;
  ParamSeries s = zero_series(order);
  s[0] = value;
  p.emplace(Monomial(mode_count, 0), std::move(s));
  return p;
}

// Composes the bracket expansion with an argument polynomial that carries no
// parameter dependence of its own.
Poly compose_bracket(const Poly& a, DeformationKind kind, int order, int param_order) {
  std::vector<Poly> pow;  // pow[k] = a^k, k >= 1
  const int max_power = kind == DeformationKind::Q_real ? order + 1 : 2 * order + 1;
  pow.push_back(a);
  for (int k = 2; k <= max_power; ++k) pow.push_back(mul(pow.back(), a, param_order));

  Poly r;
  add_scaled(r, pow[0], Rational(1), 0, param_order);
  if (kind == DeformationKind::Q_real) {
    // [A] = A + (T/2)(A^2 - A) + (T^2/12)(2A^3 - 3A^2 + A) + (T^3/24)(A^4 - 2A^3 + A^2)
    if (order >= 1) {
      add_scaled(r, pow[1], Rational(1, 2), 1, param_order);
      add_scaled(r, pow[0], Rational(-1, 2), 1, param_order);
    }
    if (order >= 2) {
      add_scaled(r, pow[2], Rational(2, 12), 2, param_order);
      add_scaled(r, pow[1], Rational(-3, 12), 2, param_order);
      add_scaled(r, pow[0], Rational(1, 12), 2, param_order);
    }
    if (order >= 3) {
      add_scaled(r, pow[3], Rational(1, 24), 3, param_order);
      add_scaled(r, pow[2], Rational(-2, 24), 3, param_order);
      add_scaled(r, pow[1], Rational(1, 24), 3, param_order);
    }
  } else {
    // [A] = A + s (tau^2/6)(A - A^3) + (tau^4/360)(7A - 10A^3 + 3A^5),
    // s = +1 for the phase kind, -1 for the real kind.
    const Rational s = kind == DeformationKind::q_phase ? Rational(1) : Rational(-1);
    if (order >= 1) {
      add_scaled(r, pow[0], s / 6, 2, param_order);
      add_scaled(r, pow[2], -s / 6, 2, param_order);
    }
    if (order >= 2) {
      add_scaled(r, pow[0], Rational(7, 360), 4, param_order);
      add_scaled(r, pow[2], Rational(-10, 360), 4, param_order);
      add_scaled(r, pow[4], Rational(3, 360), 4, param_order);
    }
  }
  return r;
}

Monomial unit_monomial(int mode_count, int mode, int power) {
  Monomial m(mode_count, 0);
  m[mode] = power;
  return m;
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "n" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string param_symbol(DeformationKind kind) {
  return kind == DeformationKind::Q_real ? "T" : "tau";
}

// "1 - 1/2 T" style rendering of one coefficient series.
std::string series_text(const ParamSeries& s, const std::string& sym) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == 0) continue;
    const bool negative = s[k] < 0;
    const Rational mag = negative ? Rational(-s[k]) : s[k];
    std::string piece;
    if (mag != 1 || k == 0) piece = to_string(mag);
    if (k >= 1) {
      if (!piece.empty()) piece += ' ';
      piece += sym;
      if (k >= 2) piece += "^" + std::to_string(k);
    }
    if (out.empty())
      out = negative ? "-" + piece : piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

int series_term_count(const ParamSeries& s) {
  int n = 0;
  for (const auto& c : s)
    if (c != 0) ++n;
  return n;
}

}  // namespace

const ParamSeries* SeriesPolynomial::coefficient(const Monomial& m) const {
  const auto it = terms.find(m);
  return it == terms.end() ? nullptr : &it->second;
}

double SeriesPolynomial::evaluate(std::span<const int> n, double param) const {
  if (static_cast<int>(n.size()) != mode_count)
    throw_argument("assignment length does not match mode count");
  double total = 0.0;
  for (const auto& [mono, series] : terms) {
    double monomial = 1.0;
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int p = 0; p < mono[i]; ++p) monomial *= n[i];
    double coeff = 0.0, param_pow = 1.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
      coeff += to_double(series[k]) * param_pow;
      param_pow *= param;
    }
    total += coeff * monomial;
  }
  return total;
}

std::string SeriesPolynomial::canonical_text() const {
  std::vector<const std::pair<const Monomial, ParamSeries>*> ordered;
  for (const auto& term : terms) ordered.push_back(&term);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    const auto degree = [](const Monomial& m) {
      int d = 0;
      for (int e : m) d += e;
      return d;
    };
    const int da = degree(a->first), db = degree(b->first);
    if (da != db) return da < db;
    return a->first > b->first;  // n1-major within a degree
  });

  const std::string sym = param_symbol(kind);
  std::string out;
  for (const auto* term : ordered) {
    const std::string mono = monomial_text(term->first);
    std::string coeff = series_text(term->second, sym);
    bool negative = false;
    if (series_term_count(term->second) > 1) {
      coeff = "(" + coeff + ")";
    } else if (coeff.starts_with('-')) {
      negative = true;
      coeff = coeff.substr(1);
    }
    std::string body;
    if (mono.empty())
      body = coeff;
    else if (coeff == "1")
      body = mono;
    else
      body = coeff + " " + mono;
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

SeriesPolynomial expand_model(const ModelSpec& spec, int order) {
  spec.validate();
  if (!spec.couplings.empty())
    throw_argument("series expansion is defined for coupling-free models");
  if (!family_is_deformed(spec.family))
    throw_argument("series expansion applies to the deformed families");
  const DeformationKind kind = spec.deformation->kind;
  const bool q_kind = kind != DeformationKind::Q_real;
  if (q_kind && (order < 1 || order > 2))
    throw_argument("symmetric-kind expansions support orders 1..2 (powers of tau^2)");
  if (!q_kind && (order < 1 || order > 3))
    throw_argument("Q_real expansions support orders 1..3 (powers of T)");
  const int param_order = q_kind ? 2 * order : order;
  const int l = spec.mode_count;

  // Argument polynomial(s) the bracket series is composed with.
  const auto mode_argument = [&](int mode) {
    Poly a;
    ParamSeries lin = zero_series(param_order);
    lin[0] = Rational(1);
    a.emplace(unit_monomial(l, mode, 1), std::move(lin));
    if (spec.family == Family::Q_gen_single || spec.family == Family::Q_generalized) {
      const Rational ci = rational_from_double(spec.c[mode]);
      if (ci != 0) {
        ParamSeries quad = zero_series(param_order);
        quad[0] = ci;
        a.emplace(unit_monomial(l, mode, 2), std::move(quad));
      }
    }
    return a;
  };

  Poly result;
  const Rational scale = rational_from_double(spec.scale);
  if (family_is_single(spec.family) && spec.family != Family::Q_gen_single) {
    // hw/2 ([n] + [n+1])
    Poly n_poly = mode_argument(0);
    Poly shifted = n_poly;
    add_into(shifted, constant_poly(l, Rational(1), param_order));
    Poly sum = compose_bracket(n_poly, kind, order, param_order);
    add_into(sum, compose_bracket(shifted, kind, order, param_order));
    add_scaled(result, sum, scale / 2, 0, param_order);
  } else {
    Poly arg;
    for (int mode = 0; mode < l; ++mode) add_into(arg, mode_argument(mode));
    add_scaled(result, compose_bracket(arg, kind, order, param_order), scale, 0, param_order);
  }
  prune(result);

  SeriesPolynomial out;
  out.mode_count = l;
  out.kind = kind;
  out.truncation_order = param_order;
  out.terms = std::move(result);
  return out;
}

double self_anharmonicity(double T, double c) {
  if (T == 2.0) throw_domain("self-anharmonicity has a pole at T = 2");
  return c + (T / 2.0) / (1.0 - T / 2.0);
}

EffectiveConstants effective_constants(const ModelSpec& spec) {
  spec.validate();
  if (!spec.couplings.empty())
    throw_argument("effective constants are defined for coupling-free models");
  if (spec.deformation && spec.deformation->is_symmetric_kind())
    throw_argument("quadratic-truncation constants are undefined for symmetric-bracket "
                   "families: their expansion has no n_i n_j term, the leading cross "
                   "terms are cubic (n_i^2 n_j)");
  if (!family_is_deformed(spec.family) || spec.mode_count < 2)
    throw_argument("effective constants need a deformed Q-kind family with at least two modes");

  const SeriesPolynomial series = expand_model(spec, 1);
  const double T = spec.deformation->value;
  const int l = spec.mode_count;
  const auto value_of = [&](const Monomial& m) {
    const ParamSeries* s = series.coefficient(m);
    if (!s) return 0.0;
    double v = 0.0, p = 1.0;
    for (const auto& ck : *s) {
      v += to_double(ck) * p;
      p *= T;
    }
    return v;
  };

  EffectiveConstants out;
  out.hbar_omega.resize(l);
  out.gamma.resize(l);
  out.gamma_cross.assign(l, std::vector<double>(l, 0.0));
  std::vector<double> lin(l), quad(l);
  for (int i = 0; i < l; ++i) {
    lin[i] = value_of(unit_monomial(l, i, 1));
    quad[i] = value_of(unit_monomial(l, i, 2));
  }
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      Monomial m(l, 0);
      m[i] = m[j] = 1;
      out.gamma_cross[i][j] = out.gamma_cross[j][i] = value_of(m);
    }
  // n -> (n+1/2) - 1/2 turns a n + b n^2 + g n_i n_j into the empirical form;
  // the linear coefficient picks up -b from its own mode and -g/2 per partner.
  for (int i = 0; i < l; ++i) {
    double cross_half = 0.0;
    for (int j = 0; j < l; ++j)
      if (j != i) cross_half += 0.5 * out.gamma_cross[i][j];
    out.hbar_omega[i] = lin[i] - quad[i] - cross_half;
    out.gamma[i] = 2.0 * quad[i];
  }
  return out;
}

CrossAnharmonicity cross_anharmonicity_report(const ModelSpec& spec) {
  spec.validate();
  if (spec.mode_count != 2)
    throw_argument("the cross-anharmonicity report is defined for two-mode models");
  const SeriesPolynomial series = expand_model(spec, 1);

  CrossAnharmonicity out;
  out.bilinear = ParamSeries(series.truncation_order + 1, Rational(0));
  if (const ParamSeries* s = series.coefficient({1, 1})) out.bilinear = *s;
  for (const auto& [mono, coeff] : series.terms)
    if (mono[0] >= 1 && mono[1] >= 1) out.cross_terms.emplace_back(mono, coeff);
  return out;
}

SpectrumComparison compare_spectra(const LevelSpectrum& a, const LevelSpectrum& b) {
  std::map<std::vector<int>, const LevelEntry*> index_b;
  for (const auto& e : b.entries) index_b[e.assignment] = &e;
  if (index_b.size() != b.entries.size())
    throw_data("duplicate assignment in the reference spectrum");

  SpectrumComparison out;
  std::map<std::vector<int>, CompareRow> rows;
  for (const auto& e : a.entries) {
    const auto it = index_b.find(e.assignment);
    if (it == index_b.end()) {
      std::string label;
      for (int v : e.assignment) label += (label.empty() ? "" : ",") + std::to_string(v);
      throw_data("assignment (" + label + ") is missing from the reference spectrum");
    }
    CompareRow row;
    row.assignment = e.assignment;
    row.energy_a = e.energy;
    row.energy_b = it->second->energy;
    row.residual = e.energy - it->second->energy;
    if (!rows.emplace(e.assignment, row).second)
      throw_data("duplicate assignment in the compared spectrum");
  }
  if (rows.size() != index_b.size())
    throw_data("the spectra cover different assignment sets");

  double sumsq = 0.0;
  for (auto& [key, row] : rows) {
    out.max_abs = std::max(out.max_abs, std::abs(row.residual));
    sumsq += row.residual * row.residual;
    out.rows.push_back(std::move(row));
  }
  out.rms = out.rows.empty() ? 0.0 : std::sqrt(sumsq / out.rows.size());
  return out;
}

}  // namespace qvib
