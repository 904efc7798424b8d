#include "chevlab/chevmat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chevlab {

Lattice parse_lattice(std::string_view text) {
  if (text == "adjoint" || text == "ad") return Lattice::Adjoint;
  if (text == "sc" || text == "simply_connected") return Lattice::SimplyConnected;
  if (text == "so6" || text == "intermediate") return Lattice::IntermediateSO6;
  throw RingError("unknown lattice '" + std::string(text) + "'");
}

std::string lattice_name(Lattice l) {
  switch (l) {
    case Lattice::Adjoint:
      return "adjoint";
    case Lattice::SimplyConnected:
      return "sc";
    case Lattice::IntermediateSO6:
      return "so6";
  }
  return {};
}

namespace {

IntMat unit_matrix(std::size_t n, std::size_t i, std::size_t j, long v = 1) {
  IntMat m(n);
  m.at(i, j) = v;
  return m;
}

// Exterior square of a 4x4 matrix acting as a derivation, in the basis
// e12, e13, e14, e23, -e24, e34.
IntMat wedge_derivation(const IntMat& x) {
  static const std::pair<int, int> pairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  static const long sign[6] = {1, 1, 1, 1, -1, 1};
  auto locate = [](int p, int q, long& eps) -> int {
    eps = 1;
    if (p > q) {
      std::swap(p, q);
      eps = -1;
    }
    for (int k = 0; k < 6; ++k)
      if (pairs[k].first == p && pairs[k].second == q) return k;
    return -1;
  };
  IntMat out(6);
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = pairs[k];
    for (int m = 0; m < 4; ++m) {
      long eps;
      if (long c = x.at(m, i); c && m != j) {
        int t = locate(m, j, eps);
        out.at(t, k) += c * eps * sign[t] * sign[k];
      }
      if (long c = x.at(m, j); c && m != i) {
        int t = locate(i, m, eps);
        out.at(t, k) += c * eps * sign[t] * sign[k];
      }
    }
  }
  return out;
}

elem_t ring_int(const FiniteRing& r, long v) { return v ? r.from_int(v) : r.zero(); }

}  // namespace

std::shared_ptr<const Representation> Representation::make(RootSystemPtr phi, Lattice lattice,
                                                           bool verify) {
  std::shared_ptr<Representation> rep(new Representation());
  rep->phi_ = phi;
  rep->lattice_ = lattice;
  const RootSystem& rs = *phi;
  const std::size_t nr = rs.size(), np = rs.num_positive();
  const int l = rs.rank();
  rep->e_.assign(nr, IntMat());

  if (lattice == Lattice::Adjoint) {
    ChevalleyBasis cb = chevalley_basis(rs);
    const std::size_t n = cb.dim;
    // Height-descending basis: positive roots (highest first), h_i, negatives.
    std::vector<std::size_t> pos(n);
    std::size_t next = 0;
    for (std::size_t k = np; k-- > 0;) pos[k] = next++;
    for (int i = 0; i < l; ++i) pos[nr + i] = next++;
    for (std::size_t k = np; k < nr; ++k) pos[k] = next++;
    rep->adjoint_order_ = pos;
    rep->dim_ = n;
    for (std::size_t a = 0; a < nr; ++a) {
      IntMat m(n);
      for (std::size_t j = 0; j < n; ++j)
        for (auto [k, c] : cb.br(a, j)) m.at(pos[k], pos[j]) += c;
      rep->e_[a] = std::move(m);
    }
    rep->center_exp_ = 1;
    rep->finish(verify);
    return rep;
  }

  std::vector<IntMat> es(l), fs(l);
  if (lattice == Lattice::SimplyConnected && rs.type() == RootType::A) {
    const std::size_t n = l + 1;
    for (int i = 0; i < l; ++i) {
      es[i] = unit_matrix(n, i, i + 1);
      fs[i] = unit_matrix(n, i + 1, i);
    }
    rep->dim_ = n;
    rep->center_exp_ = static_cast<unsigned>(n);
  } else if (lattice == Lattice::SimplyConnected && rs.type() == RootType::C) {
    // Basis v_1..v_l, v_{-l}..v_{-1}; v_{-i} sits at position 2l - i.
    const std::size_t n = 2 * l;
    auto neg = [&](int i) { return static_cast<std::size_t>(2 * l - i); };  // i is 1-based
    for (int i = 1; i < l; ++i) {
      IntMat e = unit_matrix(n, i - 1, i);
      e.at(neg(i + 1), neg(i)) = -1;
      es[i - 1] = e;
      fs[i - 1] = int_transpose(e);
    }
    es[l - 1] = unit_matrix(n, l - 1, neg(l));
    fs[l - 1] = int_transpose(es[l - 1]);
    rep->dim_ = n;
    rep->center_exp_ = 2;
    rep->form_ = Form::Symplectic;
    rep->gram_ = IntMat(n);
    for (int i = 1; i <= l; ++i) {
      rep->gram_.at(i - 1, neg(i)) = 1;
      rep->gram_.at(neg(i), i - 1) = -1;
    }
  } else if (lattice == Lattice::IntermediateSO6 && rs.type() == RootType::A && l == 3) {
    for (int i = 0; i < 3; ++i) {
      es[i] = wedge_derivation(unit_matrix(4, i, i + 1));
      fs[i] = wedge_derivation(unit_matrix(4, i + 1, i));
    }
    rep->dim_ = 6;
    rep->center_exp_ = 2;
    rep->form_ = Form::Quadratic;
    rep->gram_ = IntMat(6);
    for (int i = 0; i < 3; ++i) rep->gram_.at(i, 5 - i) = 1;
  } else {
    throw RingError("lattice " + lattice_name(lattice) + " is not supported for " + rs.label());
  }

  for (int i = 0; i < l; ++i) {
    rep->e_[rs.simple(i)] = es[i];
    rep->e_[rs.negative_of(rs.simple(i))] = fs[i];
  }
  auto divide = [](IntMat m, long d) {
    for (auto& v : m.a) {
      if (v % d) throw RingError("representation propagation is not integral");
      v /= d;
    }
    return m;
  };
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (rs.height(xi) < 2) continue;
    for (int i = 0; i < l; ++i) {
      Root d = rs.root(xi);
      d[i] -= 1;
      auto b = rs.index_of(d);
      if (!b || !rs.is_positive(*b)) continue;
      std::size_t a = rs.simple(i);
      rep->e_[xi] = divide(int_bracket(rep->e_[a], rep->e_[*b]), rs.structure_constant(a, *b));
      std::size_t na = rs.negative_of(a), nb = rs.negative_of(*b);
      rep->e_[rs.negative_of(xi)] =
          divide(int_bracket(rep->e_[na], rep->e_[nb]), rs.structure_constant(na, nb));
      break;
    }
  }
  rep->finish(verify);
  return rep;
}

void Representation::finish(bool verify) {
  const RootSystem& rs = *phi_;
  const std::size_t nr = rs.size();
  if (verify) {
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t b = 0; b < nr; ++b) {
        IntMat br = int_bracket(e_[a], e_[b]);
        if (b == rs.negative_of(a)) {
          for (std::size_t c = 0; c < nr; ++c) {
            IntMat lhs = int_bracket(br, e_[c]);
            IntMat rhs = int_add(IntMat(dim_), e_[c], rs.pairing(c, a));
            if (lhs != rhs) throw RingError("representation violates [h_a, e_c] relation");
          }
        } else if (auto s = rs.sum_index(a, b)) {
          if (br != int_add(IntMat(dim_), e_[*s], rs.structure_constant(a, b)))
            throw RingError("representation violates a structure constant");
        } else if (!br.is_zero()) {
          throw RingError("representation violates a vanishing bracket");
        }
      }
  }
  tower_.assign(nr, {});
  probe_.assign(nr, {0, 0});
  for (std::size_t a = 0; a < nr; ++a) {
    IntMat t = e_[a];
    for (long k = 1; !t.is_zero(); ++k) {
      tower_[a].push_back(t);
      t = int_mul(t, e_[a]);
      for (auto& v : t.a) {
        if (v % (k + 1)) throw RingError("exp(t e_a) is not integral");
        v /= k + 1;
      }
      if (k > static_cast<long>(dim_)) throw RingError("e_a is not nilpotent");
    }
    bool found = false;
    for (std::size_t i = 0; i < dim_ && !found; ++i)
      for (std::size_t j = 0; j < dim_ && !found; ++j)
        if (e_[a].at(i, j) == 1 || e_[a].at(i, j) == -1) {
          probe_[a] = {i, j};
          found = true;
        }
    if (!found) throw RingError("root matrix without a unit entry");
  }
}

std::string Representation::label() const { return phi_->label() + "/" + lattice_name(lattice_); }

Mat Representation::root_element(const FiniteRing& r, std::size_t a, elem_t t) const {
  Mat m = mat_identity(r, dim_);
  if (t == r.zero()) return m;
  elem_t tk = r.one();
  for (const IntMat& term : tower_[a]) {
    tk = r.mul(tk, t);
    for (std::size_t i = 0; i < term.a.size(); ++i)
      if (term.a[i]) m.a[i] = r.add(m.a[i], r.mul(ring_int(r, term.a[i]), tk));
  }
  return m;
}

Mat Representation::weyl_element(const FiniteRing& r, std::size_t a, elem_t t) const {
  elem_t ti = r.inv(t);
  Mat x = root_element(r, a, t);
  return mat_mul(r, mat_mul(r, x, root_element(r, phi_->negative_of(a), r.neg(ti))), x);
}

Mat Representation::torus_element(const FiniteRing& r, std::size_t a, elem_t t) const {
  return mat_mul(r, weyl_element(r, a, t), weyl_element(r, a, r.neg(r.one())));
}

bool Representation::satisfies_equations(const FiniteRing& r, const Mat& g) const {
  if (g.n != dim_) return false;
  switch (form_) {
    case Form::Symplectic: {
      Mat j = mat_from_int(r, gram_);
      return mat_mul(r, mat_mul(r, mat_transpose(g), j), g) == j;
    }
    case Form::Quadratic: {
      Mat j = mat_from_int(r, gram_);
      Mat m = mat_mul(r, mat_mul(r, mat_transpose(g), j), g);
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
          elem_t d = r.sub(m.at(i, k), j.at(i, k));
          elem_t dt = r.sub(m.at(k, i), j.at(k, i));
          if (i == k ? d != r.zero() : r.add(d, dt) != r.zero()) return false;
        }
      return true;
    }
    case Form::None:
      if (lattice_ == Lattice::Adjoint) return true;
      return mat_det(r, g) == r.one();
  }
  return false;
}

std::size_t Representation::torus_param_count() const {
  switch (lattice_) {
    case Lattice::Adjoint:
      return static_cast<std::size_t>(phi_->rank());
    case Lattice::SimplyConnected:
      return form_ == Form::Symplectic ? dim_ / 2 : dim_;
    case Lattice::IntermediateSO6:
      return 3;
  }
  return 0;
}

Mat Representation::torus_from_params(const FiniteRing& r, const std::vector<elem_t>& p) const {
  if (p.size() != torus_param_count()) throw RingError("torus parameter count mismatch");
  for (elem_t u : p)
    if (!r.is_unit(u)) throw RingError("torus parameter is not a unit");
  Mat d(dim_);
  switch (lattice_) {
    case Lattice::Adjoint: {
      const RootSystem& rs = *phi_;
      for (std::size_t k = 0; k < rs.size(); ++k) {
        elem_t v = r.one();
        for (int i = 0; i < rs.rank(); ++i) {
          int c = rs.root(k)[i];
          elem_t base = c < 0 ? r.inv(p[i]) : p[i];
          v = r.mul(v, r.pow(base, static_cast<unsigned>(c < 0 ? -c : c)));
        }
        d.at(adjoint_order_[k], adjoint_order_[k]) = v;
      }
      for (int i = 0; i < rs.rank(); ++i) {
        std::size_t h = adjoint_order_[rs.size() + i];
        d.at(h, h) = r.one();
      }
      break;
    }
    case Lattice::SimplyConnected:
      if (form_ == Form::Symplectic) {
        for (std::size_t i = 0; i < dim_ / 2; ++i) {
          d.at(i, i) = p[i];
          d.at(dim_ - 1 - i, dim_ - 1 - i) = r.inv(p[i]);
        }
      } else {
        elem_t prod = r.one();
        for (std::size_t i = 0; i < dim_; ++i) {
          d.at(i, i) = p[i];
          prod = r.mul(prod, p[i]);
        }
        if (prod != r.one()) throw RingError("SL torus parameters must have product 1");
      }
      break;
    case Lattice::IntermediateSO6:
      for (std::size_t i = 0; i < 3; ++i) {
        d.at(i, i) = p[i];
        d.at(5 - i, 5 - i) = r.inv(p[i]);
      }
      break;
  }
  return d;
}

std::optional<std::vector<elem_t>> Representation::torus_params(const FiniteRing& r,
                                                                const Mat& d) const {
  if (d.n != dim_ || !mat_is_diagonal(d)) return std::nullopt;
  std::vector<elem_t> p;
  switch (lattice_) {
    case Lattice::Adjoint:
      for (int i = 0; i < phi_->rank(); ++i) {
        std::size_t k = adjoint_order_[phi_->simple(i)];
        p.push_back(d.at(k, k));
      }
      break;
    case Lattice::SimplyConnected:
      for (std::size_t i = 0; i < torus_param_count(); ++i) p.push_back(d.at(i, i));
      break;
    case Lattice::IntermediateSO6:
      for (std::size_t i = 0; i < 3; ++i) p.push_back(d.at(i, i));
      break;
  }
  for (elem_t u : p)
    if (!r.is_unit(u)) return std::nullopt;
  try {
    if (torus_from_params(r, p) != d) return std::nullopt;
  } catch (const RingError&) {
    return std::nullopt;
  }
  return p;
}

std::vector<Mat> Representation::torus_generators(const FiniteRing& r) const {
  std::vector<Mat> out;
  const std::size_t k = torus_param_count();
  const bool sl = lattice_ == Lattice::SimplyConnected && form_ == Form::None;
  for (elem_t u : r.units()) {
    if (u == r.one()) continue;
    for (std::size_t i = 0; i < (sl ? k - 1 : k); ++i) {
      std::vector<elem_t> p(k, r.one());
      p[i] = u;
      if (sl) p[i + 1] = r.inv(u);
      out.push_back(torus_from_params(r, p));
    }
  }
  return out;
}

Mat so6_torus_map(const FiniteRing& r, elem_t z1, elem_t z2, elem_t z3, elem_t z4) {
  if (r.mul(r.mul(z1, z2), r.mul(z3, z4)) != r.one())
    throw RingError("so6_torus_map: product of arguments must be 1");
  Mat d(6);
  const elem_t z[4] = {z1, z2, z3, z4};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j, ++k) d.at(k, k) = r.mul(z[i], z[j]);
  return d;
}

namespace {

// Peels root factors from a unitriangular matrix, leftmost first, over the
// given roots in height order. Returns nullopt if a remainder is left.
std::optional<std::vector<std::pair<std::size_t, elem_t>>> peel(
    const Representation& rep, const FiniteRing& r, Mat m, const std::vector<std::size_t>& order) {
  std::vector<std::pair<std::size_t, elem_t>> out;
  for (std::size_t a : order) {
    auto [i, j] = rep.probe(a);
    elem_t scale = ring_int(r, rep.lie(a).at(i, j));  // +-1
    elem_t c = r.mul(m.at(i, j), scale);
    if (c == r.zero()) continue;
    m = mat_mul(r, rep.root_element(r, a, r.neg(c)), m);
    out.emplace_back(a, c);
  }
  if (!mat_is_identity(r, m)) return std::nullopt;
  return out;
}

}  // namespace

std::optional<GaussFactors> gauss_decompose(const Representation& rep, const FiniteRing& r,
                                            const Mat& g) {
  if (g.n != rep.dim()) throw RingError("gauss_decompose: dimension mismatch");
  if (!r.is_local()) throw RingError("gauss_decompose: ring is not local");
  const std::size_t n = g.n;
  Mat m = g;
  Mat low = mat_identity(r, n);
  for (std::size_t k = 0; k < n; ++k) {
    elem_t p = m.at(k, k);
    if (!r.is_unit(p)) return std::nullopt;
    elem_t pi = r.inv(p);
    for (std::size_t i = k + 1; i < n; ++i) {
      elem_t f = r.mul(m.at(i, k), pi);
      if (f == r.zero()) continue;
      low.at(i, k) = f;
      for (std::size_t j = k; j < n; ++j) m.at(i, j) = r.sub(m.at(i, j), r.mul(f, m.at(k, j)));
    }
  }
  Mat d(n), up = m;
  for (std::size_t k = 0; k < n; ++k) {
    d.at(k, k) = m.at(k, k);
    elem_t pi = r.inv(m.at(k, k));
    for (std::size_t j = 0; j < n; ++j) up.at(k, j) = r.mul(pi, m.at(k, j));
  }
  auto params = rep.torus_params(r, d);
  if (!params) return std::nullopt;
  const RootSystem& rs = rep.roots();
  std::vector<std::size_t> pos, neg;
  for (std::size_t a = 0; a < rs.num_positive(); ++a) {
    pos.push_back(a);
    neg.push_back(rs.negative_of(a));
  }
  auto u = peel(rep, r, up, pos);
  if (!u) return std::nullopt;
  auto lw = peel(rep, r, low, neg);
  if (!lw) return std::nullopt;
  return GaussFactors{*lw, *params, *u};
}

Mat gauss_reassemble(const Representation& rep, const FiniteRing& r, const GaussFactors& f) {
  Mat m = mat_identity(r, rep.dim());
  for (auto [a, c] : f.lower) m = mat_mul(r, m, rep.root_element(r, a, c));
  m = mat_mul(r, m, rep.torus_from_params(r, f.torus));
  for (auto [a, c] : f.upper) m = mat_mul(r, m, rep.root_element(r, a, c));
  return m;
}

Mat weyl_word_matrix(const Representation& rep, const FiniteRing& r, const std::vector<int>& w) {
  Mat m = mat_identity(r, rep.dim());
  for (int i : w) m = mat_mul(r, m, rep.weyl_element(r, rep.roots().simple(i), r.one()));
  return m;
}

std::vector<std::vector<int>> weyl_words(const Representation& rep, const FiniteRing& r) {
  auto pattern = [](const Mat& m) {
    std::vector<bool> p(m.a.size());
    for (std::size_t i = 0; i < m.a.size(); ++i) p[i] = m.a[i] != 0;
    return p;
  };
  const int l = rep.roots().rank();
  std::vector<Mat> gens;
  for (int i = 0; i < l; ++i) gens.push_back(rep.weyl_element(r, rep.roots().simple(i), r.one()));
  std::set<std::vector<bool>> seen;
  std::vector<std::pair<std::vector<int>, Mat>> queue{{{}, mat_identity(r, rep.dim())}};
  seen.insert(pattern(queue[0].second));
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int i = 0; i < l; ++i) {
      Mat m = mat_mul(r, queue[q].second, gens[i]);
      if (!seen.insert(pattern(m)).second) continue;
      auto w = queue[q].first;
      w.push_back(i);
      queue.emplace_back(std::move(w), std::move(m));
    }
  std::vector<std::vector<int>> out;
  for (auto& [w, m] : queue) out.push_back(w);
  return out;
}

TEDecomposition decompose_te(const Representation& rep, const FiniteRing& r, const Mat& g) {
  TEDecomposition out;
  if (g.n != rep.dim()) throw RingError("decompose_te: dimension mismatch");
  if (!rep.satisfies_equations(r, g)) {
    out.diagnosis = rep.form() == Representation::Form::None ? "determinant is not 1"
                                                             : "matrix does not preserve the form";
    return out;
  }
  for (const auto& w : weyl_words(rep, r)) {
    auto f = gauss_decompose(rep, r, mat_mul(r, weyl_word_matrix(rep, r, w), g));
    if (f) {
      out.member = true;
      out.weyl_word = w;
      out.factors = std::move(*f);
      return out;
    }
  }
  out.diagnosis = "no Weyl translate lies in the big Gauss cell";
  return out;
}

elem_t unit_square_class(const FiniteRing& r, elem_t u) {
  if (!r.is_unit(u)) throw RingError("unit_square_class: not a unit");
  elem_t best = 0xffff;
  for (elem_t s : r.unit_squares()) best = std::min(best, r.mul(u, s));
  return best;
}

SO6Membership elementary_membership_so6(const Representation& rep, const FiniteRing& r,
                                        const Mat& g) {
  if (rep.lattice() != Lattice::IntermediateSO6)
    throw RingError("elementary_membership_so6 needs the SO6 representation");
  SO6Membership out;
  TEDecomposition te = decompose_te(rep, r, g);
  if (!te.member) {
    out.diagnosis = te.diagnosis;
    return out;
  }
  out.in_te = true;
  const auto& x = te.factors.torus;
  out.square_class = unit_square_class(r, r.mul(r.mul(x[0], x[1]), x[2]));
  out.elementary = out.square_class == unit_square_class(r, r.one());
  return out;
}

std::vector<Mat> center_scalars(const Representation& rep, const FiniteRing& r) {
  std::vector<Mat> out;
  for (elem_t u : r.units()) {
    if (r.pow(u, rep.center_exponent()) != r.one()) continue;
    Mat s = mat_scalar(r, rep.dim(), u);
    if (rep.torus_params(r, s)) out.push_back(s);
  }
  return out;
}

}  // namespace chevlab
