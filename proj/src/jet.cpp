#include "laxlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace laxlab {

namespace {
constexpr double kMergeDropRel = 1e-14;
}

JetExpr::JetExpr(std::vector<JetMonomial> monomials) : monomials_(std::move(monomials)) {
  normalize();
}

JetExpr JetExpr::constant(Complex c) {
  return JetExpr{{JetMonomial{c, 0, {}}}};
}

JetExpr JetExpr::exponential(Complex c, int q) {
  return JetExpr{{JetMonomial{c, q, {}}}};
}

JetExpr JetExpr::jet(int k) {
  if (k < 1) throw InvalidIndex("jet index must be >= 1");
  return JetExpr{{JetMonomial{Complex{1.0, 0.0}, 0, {{k, 1}}}}};
}

void JetExpr::normalize() {
  std::sort(monomials_.begin(), monomials_.end(),
            [](const JetMonomial& a, const JetMonomial& b) { return key_less(a, b); });
  std::vector<JetMonomial> merged;
  merged.reserve(monomials_.size());
  for (auto& m : monomials_) {
    if (!merged.empty() && key_equal(merged.back(), m)) {
      merged.back().coeff += m.coeff;
    } else {
      merged.push_back(std::move(m));
    }
  }
  double max_abs = 0.0;
  for (const auto& m : merged) max_abs = std::max(max_abs, std::abs(m.coeff));
  const double drop = kMergeDropRel * max_abs;
  monomials_.clear();
  for (auto& m : merged) {
    if (std::abs(m.coeff) > drop && m.coeff != Complex{0.0, 0.0}) {
      monomials_.push_back(std::move(m));
    }
  }
}

int JetExpr::max_jet_order() const {
  int order = 0;
  for (const auto& m : monomials_) {
    for (const auto& [k, a] : m.powers) order = std::max(order, k);
  }
  return order;
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
  return buf;
}

std::string JetExpr::str() const {
  if (monomials_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& m : monomials_) {
    if (!first) out += " + ";
    first = false;
    out += format_complex(m.coeff);
    out += " * E[" + std::to_string(m.exp_weight) + "]";
    for (const auto& [k, a] : m.powers) {
      out += " * u" + std::to_string(k);
      if (a > 1) out += "^" + std::to_string(a);
    }
  }
  return out;
}

JetExpr je_add(const JetExpr& a, const JetExpr& b) {
  std::vector<JetMonomial> all = a.monomials_;
  all.insert(all.end(), b.monomials_.begin(), b.monomials_.end());
  return JetExpr{std::move(all)};
}

JetExpr je_sub(const JetExpr& a, const JetExpr& b) {
  return je_add(a, je_scale(Complex{-1.0, 0.0}, b));
}

JetExpr je_scale(Complex c, const JetExpr& a) {
  std::vector<JetMonomial> out = a.monomials_;
  for (auto& m : out) m.coeff *= c;
  return JetExpr{std::move(out)};
}

JetExpr je_mul(const JetExpr& a, const JetExpr& b) {
  std::vector<JetMonomial> out;
  out.reserve(a.monomials_.size() * b.monomials_.size());
  for (const auto& ma : a.monomials_) {
    for (const auto& mb : b.monomials_) {
      JetMonomial m;
      m.coeff = ma.coeff * mb.coeff;
      m.exp_weight = ma.exp_weight + mb.exp_weight;
      // Merge the two sorted powers maps, adding exponents on equal keys.
      auto ia = ma.powers.begin();
      auto ib = mb.powers.begin();
      while (ia != ma.powers.end() || ib != mb.powers.end()) {
        if (ib == mb.powers.end() || (ia != ma.powers.end() && ia->first < ib->first)) {
          m.powers.push_back(*ia++);
        } else if (ia == ma.powers.end() || ib->first < ia->first) {
          m.powers.push_back(*ib++);
        } else {
          m.powers.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      out.push_back(std::move(m));
    }
  }
  return JetExpr{std::move(out)};
}

JetExpr d_plus(const JetExpr& a, double beta) {
  std::vector<JetMonomial> out;
  for (const auto& m : a.monomials_) {
    if (m.exp_weight != 0) {
      // chain rule on e^{q beta phi}
      JetMonomial t = m;
      t.coeff *= static_cast<double>(m.exp_weight) * beta;
      auto it = std::lower_bound(t.powers.begin(), t.powers.end(), std::pair<int, int>{1, 0});
      if (it != t.powers.end() && it->first == 1) {
        it->second += 1;
      } else {
        t.powers.insert(it, {1, 1});
      }
      out.push_back(std::move(t));
    }
    // Leibniz over the jet factors
    for (std::size_t j = 0; j < m.powers.size(); ++j) {
      const auto [k, a_k] = m.powers[j];
      JetMonomial t = m;
      t.coeff *= static_cast<double>(a_k);
      if (a_k == 1) {
        t.powers.erase(t.powers.begin() + static_cast<std::ptrdiff_t>(j));
      } else {
        t.powers[j].second -= 1;
      }
      auto it = std::lower_bound(t.powers.begin(), t.powers.end(), std::pair<int, int>{k + 1, 0});
      if (it != t.powers.end() && it->first == k + 1) {
        it->second += 1;
      } else {
        t.powers.insert(it, {k + 1, 1});
      }
      out.push_back(std::move(t));
    }
  }
  return JetExpr{std::move(out)};
}

Complex je_eval(const JetExpr& a, double beta, double phi, std::span<const Complex> u) {
  Complex sum{0.0, 0.0};
  for (const auto& m : a.monomials()) {
    Complex term = m.coeff;
    if (m.exp_weight != 0) {
      term *= std::exp(static_cast<double>(m.exp_weight) * beta * phi);
    }
    for (const auto& [k, a_k] : m.powers) {
      if (static_cast<std::size_t>(k) > u.size()) {
        throw JetOrderTooLow("expression references u" + std::to_string(k) +
                             " but only " + std::to_string(u.size()) + " jets supplied");
      }
      const Complex v = u[static_cast<std::size_t>(k - 1)];
      for (int p = 0; p < a_k; ++p) term *= v;
    }
    sum += term;
  }
  return sum;
}

bool operator==(const JetExpr& a, const JetExpr& b) {
  if (a.monomials_.size() != b.monomials_.size()) return false;
  for (std::size_t i = 0; i < a.monomials_.size(); ++i) {
    if (!key_equal(a.monomials_[i], b.monomials_[i])) return false;
    if (a.monomials_[i].coeff != b.monomials_[i].coeff) return false;
  }
  return true;
}

bool je_close(const JetExpr& a, const JetExpr& b, double rel_tol) {
  const auto& ma = a.monomials();
  const auto& mb = b.monomials();
  if (ma.size() != mb.size()) return false;
  double scale = 0.0;
  for (const auto& m : ma) scale = std::max(scale, std::abs(m.coeff));
  for (const auto& m : mb) scale = std::max(scale, std::abs(m.coeff));
  if (scale == 0.0) return true;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (!key_equal(ma[i], mb[i])) return false;
    if (std::abs(ma[i].coeff - mb[i].coeff) > rel_tol * scale) return false;
  }
  return true;
}

}  // namespace laxlab
