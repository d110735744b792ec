#ifndef LINCAT_MODULE_COHOMOLOGY_HPP
#define LINCAT_MODULE_COHOMOLOGY_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincat/bimodule.hpp"
#include "lincat/catalog.hpp"
#include "lincat/constructions.hpp"
#include "lincat/hochschild.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// The cochain complex C^n_B(M) = Hom(B^{⊗n} ⊗ M, M) of a left B-module,
/// with
///   (df)(b_1,…,b_{n+1},u) = b_1·f(b_2,…,u) + Σ_j (−1)^j f(…, b_j b_{j+1}, …, u)
///                           + (−1)^{n+1} f(b_1,…,b_n, b_{n+1}·u).
///
/// Tensors are taken relative to a complete orthogonal idempotent family
/// {e_s} of B: the bases of B and M must be homogeneous (each b_i in some
/// e_s B e_t, each u_j in some e_s M), and cochains are restricted to
/// composable chains. Over a field this computes the same Ext as the plain
/// bar complex, which is the case of the family {1}.
class ModuleComplex {
 public:
  /// `module` is a (B, k)-bimodule whose right action is ignored.
  ModuleComplex(const Bimodule& module, std::optional<IdempotentFamily> family = std::nullopt)
      : m_(module), B_(module.left()), F_(module.field()) {
    IdempotentFamily fam = family ? *family : IdempotentFamily{{B_.unit(0)}};
    check_family(B_, fam);
    r_ = fam.elements.size();
    const std::size_t db = B_.dim(0, 0), dm = m_.dim();
    b_block_.assign(r_ * r_, {});
    b_pos_.assign(db, {0, 0, 0});
    for (std::size_t i = 0; i < db; ++i) {
      const Vector b = unit_vector(F_, db, i);
      bool found = false;
      for (std::size_t s = 0; s < r_ && !found; ++s)
        for (std::size_t t = 0; t < r_ && !found; ++t) {
          const Vector p = algebra_product(B_, algebra_product(B_, fam.elements[s], b), fam.elements[t]);
          if (p == b) {
            b_pos_[i] = {s, t, b_block_[s * r_ + t].size()};
            b_block_[s * r_ + t].push_back(i);
            found = true;
          }
        }
      if (!found) throw Error(ErrorKind::BadParams, "algebra basis is not homogeneous for the idempotent family");
    }
    m_block_.assign(r_, {});
    m_pos_.assign(dm, {0, 0});
    for (std::size_t j = 0; j < dm; ++j) {
      const Vector u = unit_vector(F_, dm, j);
      bool found = false;
      for (std::size_t s = 0; s < r_ && !found; ++s)
        if (m_.act_left(fam.elements[s], u) == u) {
          m_pos_[j] = {s, m_block_[s].size()};
          m_block_[s].push_back(j);
          found = true;
        }
      if (!found) throw Error(ErrorKind::BadParams, "module basis is not homogeneous for the idempotent family");
    }
    // structure constants restricted to blocks, in local coordinates
    prod_.assign(db * db, {});
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t k = 0; k < db; ++k) {
        if (b_pos_[i][1] != b_pos_[k][0]) continue;
        for (const auto& [l, v] : B_.basis_product(0, 0, 0, i, k)) prod_[i * db + k].push_back({b_pos_[l][2], v});
      }
    act_.assign(db * dm, {});
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        if (b_pos_[i][1] != m_pos_[j][0]) continue;
        const Vector r = m_.act_left(unit_vector(F_, db, i), unit_vector(F_, dm, j));
        for (std::size_t l = 0; l < dm; ++l)
          if (!r[l].is_zero()) act_[i * dm + j].push_back({m_pos_[l][1], r[l]});
      }
  }

  /// Number of cochains in degree n.
  std::size_t dim(std::size_t n) const { return Layout(*this, n).total; }

  SparseMatrix differential(std::size_t n) const {
    const Layout src(*this, n), dst(*this, n + 1);
    SparseMatrix D(F_, dst.total, src.total);
    const Scalar one = F_.one(), minus = -F_.one();
    std::vector<std::size_t> chain(n + 2, 0), sub;
    std::vector<std::size_t> local;  // local indices of b_1..b_{n+1}, then u
    std::vector<std::size_t> sub_local;
    for (std::size_t c = 0; c < dst.offsets.size(); ++c) {
      dst.decode(c, chain);
      const std::size_t out = m_block_[chain[0]].size();
      std::vector<std::size_t> sizes;
      for (std::size_t j = 1; j <= n + 1; ++j) sizes.push_back(b_block_[chain[j - 1] * r_ + chain[j]].size());
      sizes.push_back(m_block_[chain[n + 1]].size());
      std::size_t inputs = 1;
      for (auto s : sizes) inputs *= s;
      if (inputs == 0 || out == 0) continue;
      local.assign(n + 2, 0);
      for (std::size_t flat = 0; flat < inputs; ++flat) {
        const std::size_t row = dst.offsets[c] + flat * out;
        auto gb = [&](std::size_t j) { return b_block_[chain[j - 1] * r_ + chain[j]][local[j - 1]]; };  // global b_j
        const std::size_t gu = m_block_[chain[n + 1]][local[n + 1]];
        {  // b_1 · f(b_2, …, u)
          sub.assign(chain.begin() + 1, chain.end());
          sub_local.assign(local.begin() + 1, local.end());
          const auto [base, bout] = src.locate(sub, sub_local);
          for (std::size_t kp = 0; kp < bout; ++kp) {
            const std::size_t gk = m_block_[chain[1]][kp];
            for (const auto& [k, v] : act_[gb(1) * m_.dim() + gk]) D.add(row + k, base + kp, v);
          }
        }
        for (std::size_t j = 1; j <= n; ++j) {  // (−1)^j f(…, b_j b_{j+1}, …)
          sub.assign(chain.begin(), chain.end());
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
          const Scalar& sign = j % 2 == 0 ? one : minus;
          for (const auto& [l, v] : prod_[gb(j) * B_.dim(0, 0) + gb(j + 1)]) {
            sub_local.assign(local.begin(), local.end());
            sub_local[j - 1] = l;
            sub_local.erase(sub_local.begin() + static_cast<std::ptrdiff_t>(j));
            const auto [base, bout] = src.locate(sub, sub_local);
            const Scalar sv = sign * v;
            for (std::size_t k = 0; k < out; ++k) D.add(row + k, base + k, sv);
          }
        }
        {  // (−1)^{n+1} f(b_1, …, b_n, b_{n+1}·u)
          sub.assign(chain.begin(), chain.end());
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(n + 1));
          const Scalar& sign = (n + 1) % 2 == 0 ? one : minus;
          for (const auto& [l, v] : act_[gb(n + 1) * m_.dim() + gu]) {
            sub_local.assign(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(n));
            sub_local.push_back(l);
            const auto [base, bout] = src.locate(sub, sub_local);
            const Scalar sv = sign * v;
            for (std::size_t k = 0; k < out; ++k) D.add(row + k, base + k, sv);
          }
        }
        for (std::size_t j = n + 2; j-- > 0;) {
          if (++local[j] < sizes[j]) break;
          local[j] = 0;
        }
      }
    }
    D.finalize();
    return D;
  }

  /// Ext^n_B(M, M) by kernel and image, with the d∘d = 0 self-test.
  CohomologyReport cohomology(std::size_t n, const HochschildOptions& opt = {}) const {
    detail::check_degree(n, opt);
    const SparseMatrix next = differential(n);
    std::optional<SparseMatrix> prev;
    if (n > 0) prev = differential(n - 1);
    return cohomology_from(n, dim(n), prev, next);
  }

 private:
  struct Term {
    std::size_t index;
    Scalar value;
  };

  // Chains s_0..s_n in lexicographic order; the block of a chain holds
  // (b_1..b_n, u) ↦ M(s_0) with multi-index flattened b_1 first, then u, then output.
  struct Layout {
    const ModuleComplex* mc;
    std::size_t n;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;

    Layout(const ModuleComplex& c, std::size_t degree) : mc(&c), n(degree) {
      const std::size_t r = c.r_;
      std::size_t count = 1;
      for (std::size_t i = 0; i <= n; ++i) count *= r;
      std::vector<std::size_t> ch(n + 1);
      for (std::size_t b = 0; b < count; ++b) {
        decode(b, ch);
        std::size_t sz = c.m_block_[ch[0]].size() * c.m_block_[ch[n]].size();
        for (std::size_t j = 1; j <= n; ++j) sz *= c.b_block_[ch[j - 1] * r + ch[j]].size();
        offsets.push_back(total);
        total += sz;
      }
    }

    void decode(std::size_t id, std::vector<std::size_t>& ch) const {
      for (std::size_t j = ch.size(); j-- > 0;) {
        ch[j] = id % mc->r_;
        id /= mc->r_;
      }
    }

    // (offset of the cochain value's first coordinate, output size)
    std::pair<std::size_t, std::size_t> locate(const std::vector<std::size_t>& ch, const std::vector<std::size_t>& loc) const {
      std::size_t id = 0;
      for (auto s : ch) id = id * mc->r_ + s;
      std::size_t flat = 0;
      for (std::size_t j = 1; j <= n; ++j) flat = flat * mc->b_block_[ch[j - 1] * mc->r_ + ch[j]].size() + loc[j - 1];
      flat = flat * mc->m_block_[ch[n]].size() + loc[n];
      const std::size_t out = mc->m_block_[ch[0]].size();
      return {offsets[id] + flat * out, out};
    }
  };

  Bimodule m_;
  LinCat B_;
  Field F_;
  std::size_t r_ = 0;
  std::vector<std::vector<std::size_t>> b_block_;  // (s,t) ↦ global basis indices
  std::vector<std::array<std::size_t, 3>> b_pos_;  // global ↦ (s, t, local)
  std::vector<std::vector<std::size_t>> m_block_;
  std::vector<std::array<std::size_t, 2>> m_pos_;
  std::vector<std::vector<Term>> prod_;  // b_i b_k, local in its block
  std::vector<std::vector<Term>> act_;   // b_i · u_j, local in its block
};

inline CohomologyReport module_ext_complex(const Bimodule& module, std::size_t n,
                                           std::optional<IdempotentFamily> family = std::nullopt,
                                           const HochschildOptions& opt = {}) {
  return ModuleComplex(module, std::move(family)).cohomology(n, opt);
}

/// The enveloping algebra [C]°⊗[C] acting on [C] by (a°⊗b)·u = b;u;a,
/// with the family e_x°⊗e_y built from a family {e_x} of [C] (by default
/// the identities of the objects of C).
struct EnvelopingData {
  Bimodule module;
  IdempotentFamily family;
};

inline EnvelopingData enveloping_module(const LinCat& c, std::optional<IdempotentFamily> ring_family = std::nullopt) {
  const MatrixRing ring = matrix_ring(c);
  const LinCat& A = ring.algebra;
  const IdempotentFamily fam = ring_family ? *ring_family : ring.family;
  check_family(A, fam);
  const LinCat env = tensor_product(opposite(A), A);
  const Field& F = c.field();
  const std::size_t d = A.dim(0, 0), de = env.dim(0, 0);
  Vector la(de * d * d, F.zero());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t u = 0; u < d; ++u) {
        const Vector bu = algebra_product(A, unit_vector(F, d, b), unit_vector(F, d, u));
        const Vector r = algebra_product(A, bu, unit_vector(F, d, a));
        for (std::size_t l = 0; l < d; ++l) la[((a * d + b) * d + u) * d + l] = r[l];
      }
  const LinCat k = field_cat(F);
  Vector ra(d * d, F.zero());
  for (std::size_t u = 0; u < d; ++u) ra[u * d + u] = F.one();
  EnvelopingData out{Bimodule::make(env, k, d, std::move(la), std::move(ra)), {}};
  for (const auto& ex : fam.elements)
    for (const auto& ey : fam.elements) {
      Vector e;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) e.push_back(ex[a] * ey[b]);
      out.family.elements.push_back(std::move(e));
    }
  return out;
}

}  // namespace lincat

#endif  // LINCAT_MODULE_COHOMOLOGY_HPP
