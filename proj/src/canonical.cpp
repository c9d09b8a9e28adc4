#include "dla/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dla/linalg.hpp"
#include "dla/pauli.hpp"

namespace dla {

namespace {

Mat kron_all(const std::vector<Mat>& fs) {
  Mat m = Mat::Identity(1, 1);
  for (const auto& f : fs) m = kron(m, f);
  return m;
}

Mat herm(const Mat& m) { return 0.5 * (m + m.adjoint()); }

std::vector<Mat> herm_basis(std::size_t d) {
  std::vector<Mat> out{eye(d)};
  if (d >= 2) {
    for (auto& h : hermitian_traceless_basis(d)) out.push_back(std::move(h));
  }
  return out;
}

struct Builder {
  SpaceLayout layout;
  OperatorSpace space;
  Builder(const JordanType& t, double tau)
      : layout(SpaceLayout::plain(t.factor_dims())),
        space(layout, Hermiticity::Hermitian, tau) {}
  void add(const std::vector<Mat>& factors) { space.insert(Operator(layout, kron_all(factors))); }
  void add(const Mat& m) { space.insert(Operator(layout, m)); }
};

// Spin-factor string over n' factors (factor 0 is A): identities, W at
// position n' - m, then m - 1 Y's.
std::vector<Mat> spin_string(const JordanType& t, std::size_t np, std::size_t m, const Mat& w) {
  std::vector<Mat> f;
  f.push_back(eye(t.dim_a));
  for (std::size_t p = 1; p < np; ++p) f.push_back(eye(2));
  const std::size_t pos = np - m;
  f[pos] = w;
  for (std::size_t p = pos + 1; p < np; ++p) f[p] = pauli_y();
  return f;
}

// Z* (+) Y^(n'-1)
std::vector<Mat> spin_top(const JordanType& t, std::size_t np) {
  std::vector<Mat> f{t.zstar_matrix()};
  for (std::size_t p = 1; p < np; ++p) f.push_back(pauli_y());
  return f;
}

std::vector<Mat> hat_a_basis(const JordanType& t) {
  if (!t.has_zstar()) return herm_basis(t.dim_a);
  const Mat z = t.zstar_matrix();
  const auto cb = commutant_basis({z}, 1e-10);
  std::vector<Mat> out;
  for (const auto& x : cb.basis) {
    out.push_back(herm(x));
    out.push_back(herm(kI * x));
  }
  return out;
}

}  // namespace

OperatorSpace canonical_jordan(const JordanType& t, double tau) {
  Builder b(t, tau);
  const Mat ia = eye(t.dim_a);
  switch (t.tag) {
    case JordanTag::R:
      b.add({ia});
      break;
    case JordanTag::M: {
      const std::size_t g = t.gamma;
      std::vector<Mat> mid;
      if (t.k == 4) mid.push_back(eye(2));
      auto with = [&](const Mat& a, const Mat& q, const Mat* w = nullptr) {
        std::vector<Mat> f{a};
        if (t.k == 4) f.push_back(w ? *w : eye(2));
        f.push_back(q);
        return f;
      };
      for (std::size_t k = 0; k < g; ++k)
        for (std::size_t q = k + 1; q < g; ++q) b.add(with(ia, pauli_x(g, k, q)));
      for (std::size_t k = 0; k < g; ++k) b.add(with(ia, ket_bra(g, k, k)));
      if (t.k == 2) {
        const Mat z = t.zstar_matrix();
        for (std::size_t k = 0; k < g; ++k)
          for (std::size_t q = k + 1; q < g; ++q) b.add(with(z, pauli_y(g, k, q)));
      }
      if (t.k == 4) {
        const Mat ws[3] = {pauli_x(), pauli_y(), pauli_z()};
        for (const auto& w : ws)
          for (std::size_t k = 0; k < g; ++k)
            for (std::size_t q = k + 1; q < g; ++q) b.add(with(ia, pauli_y(g, k, q), &w));
      }
      break;
    }
    case JordanTag::S: {
      const std::size_t np = (t.n + 1) / 2;
      b.add(eye(t.block_dim()));
      for (std::size_t m = 1; m < np; ++m) {
        b.add(spin_string(t, np, m, pauli_x()));
        b.add(spin_string(t, np, m, pauli_z()));
      }
      if (t.n % 2 == 0) b.add(spin_top(t, np));
      break;
    }
  }
  return b.space;
}

OperatorSpace canonical_bar(const JordanType& t, double tau) {
  Builder b(t, tau);
  const Mat ia = eye(t.dim_a);
  switch (t.tag) {
    case JordanTag::R:
      break;
    case JordanTag::M: {
      const std::size_t g = t.gamma;
      auto with = [&](const Mat& a, const Mat& q, const Mat* w = nullptr) {
        std::vector<Mat> f{a};
        if (t.k == 4) f.push_back(w ? *w : eye(2));
        f.push_back(q);
        return f;
      };
      for (std::size_t k = 0; k < g; ++k)
        for (std::size_t q = k + 1; q < g; ++q) b.add(with(ia, pauli_y(g, k, q)));
      if (t.k == 2) {
        const Mat z = t.zstar_matrix();
        for (std::size_t k = 0; k < g; ++k)
          for (std::size_t q = k + 1; q < g; ++q) {
            b.add(with(z, pauli_x(g, k, q)));
            b.add(with(z, pauli_z(g, k, q)));
          }
      }
      if (t.k == 4) {
        const Mat ws[3] = {pauli_x(), pauli_y(), pauli_z()};
        for (const auto& w : ws) {
          for (std::size_t k = 0; k < g; ++k)
            for (std::size_t q = k + 1; q < g; ++q) b.add(with(ia, pauli_x(g, k, q), &w));
          for (std::size_t k = 0; k < g; ++k) b.add(with(ia, ket_bra(g, k, k), &w));
        }
      }
      break;
    }
    case JordanTag::S: {
      const std::size_t np = (t.n + 1) / 2;
      const Mat wx = pauli_x(), wz = pauli_z();
      const Mat* ws[2] = {&wx, &wz};
      for (std::size_t m1 = 1; m1 < np; ++m1) {
        for (std::size_t m2 = m1 + 1; m2 < np; ++m2) {
          for (const Mat* w : ws) {
            for (const Mat* w2 : ws) {
              std::vector<Mat> f{ia};
              for (std::size_t p = 1; p < np; ++p) f.push_back(eye(2));
              f[np - m2] = *w;
              for (std::size_t p = np - m2 + 1; p < np - m1; ++p) f[p] = pauli_y();
              f[np - m1] = *w2;
              b.add(f);
            }
          }
        }
      }
      for (std::size_t m = 1; m < np; ++m) {
        std::vector<Mat> f{ia};
        for (std::size_t p = 1; p < np; ++p) f.push_back(eye(2));
        f[np - m] = pauli_y();
        b.add(f);
      }
      if (t.n % 2 == 0) {
        const Mat z = t.zstar_matrix();
        for (std::size_t m = 1; m < np; ++m) {
          for (const Mat* w : ws) {
            std::vector<Mat> f{z};
            for (std::size_t p = 1; p < np; ++p) f.push_back(eye(2));
            for (std::size_t p = 1; p < np - m; ++p) f[p] = pauli_y();
            f[np - m] = *w;
            b.add(f);
          }
        }
      }
      break;
    }
  }
  return b.space;
}

OperatorSpace canonical_hat(const JordanType& t, double tau) {
  Builder b(t, tau);
  std::size_t rest = 1;
  for (auto q : t.q_dims) rest *= q;
  for (const auto& h : hat_a_basis(t)) b.add(kron(h, eye(rest)));
  return b.space;
}

CompanionSets companion_sets(const JordanType& t, double tau) {
  return {canonical_jordan(t, tau), canonical_bar(t, tau), canonical_hat(t, tau)};
}

OperatorSpace canonical_primed(const JordanType& t, double tau) {
  Builder b(t, tau);
  std::size_t rest = 1;
  for (auto q : t.q_dims) rest *= q;
  std::vector<Mat> parts;
  if (t.has_zstar()) {
    const Mat z = t.zstar_matrix();
    const Mat ia = eye(t.dim_a);
    if (t.zstar_plus > 0) parts.push_back(0.5 * (ia + z));
    if (t.zstar_minus > 0) parts.push_back(0.5 * (ia - z));
  } else {
    parts.push_back(eye(t.dim_a));
  }
  for (const auto& p : parts)
    for (const auto& h : herm_basis(rest)) b.add(kron(p, h));
  return b.space;
}

OperatorSpace pseudo_ideal(const OperatorSpace& J, double tau) {
  const std::size_t d = J.dim();
  const auto d2 = static_cast<Eigen::Index>(d * d);
  const auto rj = static_cast<Eigen::Index>(J.rank());
  RealMat m(d2 * rj, d2);
  const RealMat q = J.coords();
  for (Eigen::Index i = 0; i < d2; ++i) {
    RealVec unit = RealVec::Zero(d2);
    unit(i) = 1.0;
    const Mat h = unpack(unit, d, Hermiticity::Hermitian);
    for (Eigen::Index k = 0; k < rj; ++k) {
      const Mat& b = J[static_cast<std::size_t>(k)].matrix();
      RealVec v = pack(kI * (h * b - b * h), Hermiticity::Hermitian);
      v -= q * (q.transpose() * v);
      m.block(k * d2, i, d2, 1) = v;
    }
  }
  const auto ns = null_space(m, tau);
  return OperatorSpace::from_orthonormal_coords(J.layout(), Hermiticity::Hermitian, ns.basis,
                                                J.tolerance().tau_rank);
}

OperatorSpace hermitian_commutant(const OperatorSpace& J, double tau) {
  OperatorSpace out(J.layout(), Hermiticity::Hermitian, J.tolerance().tau_rank);
  std::vector<Mat> ops;
  for (const auto& b : J.basis()) ops.push_back(b.matrix());
  if (ops.empty()) return out;
  for (const auto& x : commutant_basis(ops, tau).basis) {
    out.insert(Operator(J.layout(), herm(x)));
    out.insert(Operator(J.layout(), herm(kI * x)));
  }
  return out;
}

namespace {

RelationCheck inclusion(std::string name, const OperatorSpace& a, const OperatorSpace& b,
                        const OperatorSpace& target, bool anti, double tau) {
  RelationCheck c;
  c.name = std::move(name);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const Mat& x = a[i].matrix();
      const Mat& y = b[j].matrix();
      const Mat v = anti ? Mat(x * y + y * x) : Mat(kI * (x * y - y * x));
      const double res = target.residual(Operator(a.layout(), v));
      if (res > c.residual) {
        c.residual = res;
        c.worst_i = i;
        c.worst_j = j;
      }
    }
  }
  c.holds = c.residual <= tau;
  return c;
}

OperatorSpace bracket_span(const OperatorSpace& a, const OperatorSpace& b, bool anti) {
  OperatorSpace out(a.layout(), Hermiticity::Hermitian, a.tolerance().tau_rank);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const Mat& x = a[i].matrix();
      const Mat& y = b[j].matrix();
      out.insert_coords(
          pack(anti ? Mat(x * y + y * x) : Mat(kI * (x * y - y * x)), Hermiticity::Hermitian));
    }
  return out;
}

RelationCheck equality(std::string name, const OperatorSpace& a, const OperatorSpace& b,
                       double tau) {
  RelationCheck c;
  c.name = std::move(name);
  c.residual = mutual_residual(a, b);
  c.holds = a.rank() == b.rank() && c.residual <= tau;
  if (a.rank() != b.rank()) c.residual = std::max(c.residual, 1.0);
  return c;
}

RelationCheck vanishing(std::string name, const OperatorSpace& a, const OperatorSpace& b,
                        double tau) {
  RelationCheck c;
  c.name = std::move(name);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const double r = commutator(a[i], b[j]).hs_norm();
      if (r > c.residual) {
        c.residual = r;
        c.worst_i = i;
        c.worst_j = j;
      }
    }
  c.holds = c.residual <= tau;
  return c;
}

}  // namespace

CompanionReport verify_companion_relations(const OperatorSpace& J, const OperatorSpace& Jbar,
                                           const OperatorSpace& Jhat, double tau) {
  CompanionReport r;
  const double tr = J.tolerance().tau_rank;
  r.checks.push_back(inclusion("i[Jbar,Jbar] in Jbar", Jbar, Jbar, Jbar, false, tau));
  r.checks.push_back(equality("Jbar = iL([J,J])", Jbar, bracket_span(J, J, false), tau));
  r.checks.push_back(inclusion("i[Jbar,J] in J", Jbar, J, J, false, tau));
  r.checks.push_back(equality("J = L({J,J})", J, bracket_span(J, J, true), tau));
  r.checks.push_back(vanishing("[Jhat,J] = 0", Jhat, J, tau));
  r.checks.push_back(vanishing("[Jhat,Jbar] = 0", Jhat, Jbar, tau));
  r.checks.push_back(equality("pseudo-ideal = L(Jhat u Jbar)", pseudo_ideal(J, tr),
                              sum(Jhat, Jbar), tau));
  r.checks.push_back(equality("commutant(J) = Jhat", hermitian_commutant(J, tr), Jhat, tau));
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.holds;
  return r;
}

std::vector<Mat> clifford_targets(std::size_t dim_a, std::size_t r) {
  std::vector<Mat> out;
  for (std::size_t m = 1; m <= r; ++m) {
    for (const Mat& w : {pauli_x(), pauli_z()}) {
      std::vector<Mat> f{eye(dim_a)};
      for (std::size_t p = 0; p < r; ++p) f.push_back(eye(2));
      const std::size_t pos = 1 + r - m;
      f[pos] = w;
      for (std::size_t p = pos + 1; p <= r; ++p) f[p] = pauli_y();
      out.push_back(kron_all(f));
    }
  }
  return out;
}

Mat clifford_intertwiner(const std::vector<Mat>& gens, std::size_t r, const Mat& vac) {
  const Eigen::Index dsrc = vac.rows();
  const auto dim_a = static_cast<std::size_t>(vac.cols());
  const std::size_t nq = std::size_t{1} << r;
  const auto tg = clifford_targets(dim_a, r);
  // |+i> on every qubit
  Eigen::VectorXcd plus_i(2);
  plus_i << 1.0 / std::sqrt(2.0), kI / std::sqrt(2.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (std::size_t j = 0; j < r; ++j) v = kron(v, plus_i);
  const auto dt = static_cast<Eigen::Index>(dim_a * nq);
  if (dsrc != dt) throw std::invalid_argument("clifford_intertwiner: dimension mismatch");

  Mat w = Mat::Zero(dsrc, dt);
  for (std::size_t mask = 0; mask < nq; ++mask) {
    Mat ms = Mat::Identity(dsrc, dsrc);
    Mat mt = Mat::Identity(dt, dt);
    for (std::size_t j = 0; j < r; ++j) {
      if (mask & (std::size_t{1} << j)) {
        ms = ms * gens[2 * j];
        mt = mt * tg[2 * j];
      }
    }
    for (std::size_t a = 0; a < dim_a; ++a) {
      Eigen::VectorXcd ea = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_a));
      ea(static_cast<Eigen::Index>(a)) = 1.0;
      const Eigen::VectorXcd t = mt * kron(ea, v);
      const Eigen::VectorXcd s = ms * vac.col(static_cast<Eigen::Index>(a));
      w += s * t.adjoint();
    }
  }
  return w;
}

namespace {

// Columns of the +1 eigenspace first, then -1, each by column Gram-Schmidt.
Mat zstar_basis(const Mat& z) {
  const auto d = z.rows();
  const Mat id = Mat::Identity(d, d);
  const Mat p = column_range(0.5 * (id + z));
  const Mat m = column_range(0.5 * (id - z));
  Mat out(d, p.cols() + m.cols());
  out << p, m;
  return out;
}

}  // namespace

CanonicalIsometry canonical_isometry(const JordanFrame& frame, const JordanBlock& block,
                                     const OperatorSpace& J, const JordanOptions& opt) {
  CanonicalIsometry out;
  out.type = block.type;
  out.type.zstar.reset();
  const auto& cls = block.frame_indices;
  const auto& es = frame.idempotents;
  const Mat& e0 = es[cls.front()];
  const JordanType& t = block.type;
  Mat udag;  // dim_E x block_dim

  switch (t.tag) {
    case JordanTag::R:
      udag = column_range(block.projector);
      break;
    case JordanTag::M: {
      Mat v0 = column_range(e0);
      if (t.k == 2) {
        v0 = v0 * zstar_basis(herm(v0.adjoint() * block.zstar_full * v0));
      } else if (t.k == 4) {
        const auto& s01 = frame.s(cls[0], cls[1]);
        const Mat& e1 = es[cls[1]];
        const Mat a1 = e1 * s01[0] * e0;
        std::vector<Mat> bs;
        for (std::size_t i = 1; i <= 2; ++i) {
          bs.push_back(herm(v0.adjoint() * (-kI * a1.adjoint() * e1 * s01[i] * e0) * v0));
        }
        const Mat id = Mat::Identity(v0.cols(), v0.cols());
        const Mat vac = column_range(clifford_vacuum(bs, 1, id));
        v0 = v0 * clifford_intertwiner(bs, 1, vac);
      }
      const std::size_t g = t.gamma;
      udag.resize(e0.rows(), static_cast<Eigen::Index>(v0.cols() * g));
      for (Eigen::Index c = 0; c < v0.cols(); ++c) {
        for (std::size_t rho = 0; rho < g; ++rho) {
          Mat a = e0;
          if (rho > 0) a = es[cls[rho]] * frame.s(cls[0], cls[rho])[0] * e0;
          udag.col(c * static_cast<Eigen::Index>(g) + static_cast<Eigen::Index>(rho)) =
              a * v0.col(c);
        }
      }
      break;
    }
    case JordanTag::S: {
      const Mat vb = column_range(block.projector);
      const std::size_t r = (t.n + 1) / 2 - 1;
      std::vector<Mat> g;
      for (const auto& x : spin_generators(frame, cls[0], cls[1])) {
        g.push_back(herm(vb.adjoint() * x * vb));
      }
      const Mat id = Mat::Identity(vb.cols(), vb.cols());
      Mat va = column_range(clifford_vacuum(g, r, id));
      if (t.n % 2 == 0) {
        const Mat om = vb.adjoint() * block.zstar_full * vb;
        va = va * zstar_basis(herm(va.adjoint() * om * va));
      }
      udag = vb * clifford_intertwiner(g, r, va);
      break;
    }
  }
  out.U = udag.adjoint();

  const OperatorSpace canon = canonical_jordan(out.type, opt.tau_rank);
  OperatorSpace mapped(canon.layout(), Hermiticity::Hermitian, opt.tau_rank);
  for (const auto& b : J.basis()) {
    const Mat x = out.U * b.matrix() * udag;
    mapped.insert_coords(pack(herm(x), Hermiticity::Hermitian));
  }
  out.residual = mutual_residual(mapped, canon);
  if (mapped.rank() != canon.rank()) out.residual = std::max(out.residual, 1.0);
  return out;
}

}  // namespace dla
