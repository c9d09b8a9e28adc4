#include "dla/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dla/linalg.hpp"

namespace dla {

namespace {

double hs(const Mat& m) { return m.norm() / std::sqrt(static_cast<double>(m.rows())); }

Mat herm(const Mat& m) { return 0.5 * (m + m.adjoint()); }

std::size_t pow2(std::size_t e) { return std::size_t{1} << e; }

// (first computational index with weight, -weight) for tie-breaking toward
// the projection containing the lowest basis vector
std::pair<Eigen::Index, double> basis_key(const Mat& v) {
  for (Eigen::Index k = 0; k < v.rows(); ++k) {
    const double w = v.row(k).squaredNorm();
    if (w > 1e-6) return {k, -w};
  }
  return {v.rows(), 0.0};
}

// Smallest cluster (optionally skipping near-zero eigenvalues), ties toward
// the lowest basis vector.
const SpectralCluster* pick_cluster(const std::vector<SpectralCluster>& cl, const Mat& embed,
                                    bool skip_zero, double zero_tol) {
  const SpectralCluster* best = nullptr;
  std::pair<Eigen::Index, double> best_key{0, 0.0};
  for (const auto& c : cl) {
    if (skip_zero && std::abs(c.value) <= zero_tol) continue;
    const auto key = basis_key(embed * c.vectors);
    if (!best || c.vectors.cols() < best->vectors.cols() ||
        (c.vectors.cols() == best->vectors.cols() && key < best_key)) {
      best = &c;
      best_key = key;
    }
  }
  return best;
}

// Greedy span: repeatedly take the candidate with the largest residual
// (first one within 1e-6 of the maximum), stopping once every residual is
// below `accept`. Candidates that are orthogonal projections of an
// orthonormal set have residuals near 0 or of order one, so the cutoff is
// far from both.
OperatorSpace pivoted_span(const SpaceLayout& layout, const std::vector<RealVec>& cands,
                           double accept, double tau_rank) {
  OperatorSpace s(layout, Hermiticity::Hermitian, tau_rank);
  std::vector<bool> used(cands.size(), false);
  while (true) {
    std::vector<double> res(cands.size(), 0.0);
    double best = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (used[i]) continue;
      res[i] = (cands[i] - s.project_coords(cands[i])).norm();
      best = std::max(best, res[i]);
    }
    if (best <= accept) break;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!used[i] && res[i] >= (1.0 - 1e-6) * best) {
        used[i] = true;
        s.insert_coords(cands[i]);
        break;
      }
    }
  }
  return s;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<SpectralCluster> spectral_clusters(const Mat& h, double tol, bool* ambiguous) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(h));
  const auto& ev = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<SpectralCluster> out;
  std::vector<Eigen::Index> members;
  auto flush = [&]() {
    SpectralCluster c;
    c.vectors.resize(v.rows(), static_cast<Eigen::Index>(members.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      c.vectors.col(static_cast<Eigen::Index>(i)) = v.col(members[i]);
      sum += ev(members[i]);
    }
    c.value = sum / static_cast<double>(members.size());
    out.push_back(std::move(c));
    members.clear();
  };
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!members.empty()) {
      const double gap = ev(i) - ev(members.back());
      if (gap > tol * scale) {
        if (ambiguous && gap <= 100.0 * tol * scale) *ambiguous = true;
        flush();
      }
    }
    members.push_back(i);
  }
  if (!members.empty()) flush();
  return out;
}

Mat min_rank_projection(const OperatorSpace& J, const JordanOptions& opt, bool* ambiguous) {
  if (J.empty()) throw FrameError("min_rank_projection: empty Jordan algebra");
  const auto n = static_cast<Eigen::Index>(J.dim());
  const SpaceLayout& layout = J.layout();

  OperatorSpace diag(layout, Hermiticity::Hermitian, opt.tau_rank);
  for (Eigen::Index k = 0; k < n; ++k) {
    Mat m = Mat::Zero(n, n);
    m(k, k) = 1.0;
    diag.insert_coords(pack(m, Hermiticity::Hermitian));
  }
  const OperatorSpace jd = intersect(J, diag, opt.tau_rank);
  const OperatorSpace& src = jd.empty() ? J : jd;
  Mat h = Mat::Zero(n, n);
  for (std::size_t k = 0; k < src.rank(); ++k) h += generic_weight(k) * src[k].matrix();

  const Mat ident = Mat::Identity(n, n);
  auto cl = spectral_clusters(h, opt.tau_spec, ambiguous);
  const double scale = std::max(1.0, h.norm());
  const SpectralCluster* c = pick_cluster(cl, ident, true, opt.tau_spec * scale);
  if (!c) throw FrameError("min_rank_projection: no nonzero eigenvalue");
  Mat v = c->vectors;

  while (true) {
    bool changed = false;
    const Mat e = v * v.adjoint();
    const double tr = static_cast<double>(v.cols());
    for (const auto& b : J.basis()) {
      const Mat m = e * b.matrix() * e;
      const cplx coef = m.trace() / tr;
      if (hs(m - coef * e) <= opt.tau_frame * std::max(1.0, hs(m))) continue;
      const Mat mr = v.adjoint() * b.matrix() * v;
      auto sub = spectral_clusters(mr, opt.tau_spec, ambiguous);
      if (sub.size() < 2) {
        if (ambiguous) *ambiguous = true;
        continue;
      }
      const SpectralCluster* pick = pick_cluster(sub, v, false, 0.0);
      v = v * pick->vectors;
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return v * v.adjoint();
}

std::size_t JordanFrame::chi_of(std::size_t rho, std::size_t sigma) const {
  if (rho == sigma) return 0;
  auto it = offdiag.find({std::min(rho, sigma), std::max(rho, sigma)});
  return it == offdiag.end() ? 0 : it->second.size();
}

const std::vector<Mat>& JordanFrame::s(std::size_t rho, std::size_t sigma) const {
  static const std::vector<Mat> none;
  auto it = offdiag.find({std::min(rho, sigma), std::max(rho, sigma)});
  return it == offdiag.end() ? none : it->second;
}

double FrameResiduals::max() const {
  return std::max({idempotents, offdiag, mixed, completeness, trace_balance});
}

FrameResiduals frame_residuals(const JordanFrame& f) {
  FrameResiduals r;
  const auto n = static_cast<Eigen::Index>(f.dim);
  const auto& es = f.idempotents;
  Mat total = Mat::Zero(n, n);
  for (std::size_t a = 0; a < es.size(); ++a) {
    total += es[a];
    for (std::size_t b = 0; b < es.size(); ++b) {
      Mat ac = es[a] * es[b] + es[b] * es[a];
      if (a == b) ac -= 2.0 * es[a];
      r.idempotents = std::max(r.idempotents, hs(ac));
    }
  }
  r.completeness = hs(total - Mat::Identity(n, n));
  for (const auto& [key, ss] : f.offdiag) {
    const Mat sum = es[key.first] + es[key.second];
    for (std::size_t mu = 0; mu < ss.size(); ++mu) {
      for (std::size_t nu = mu; nu < ss.size(); ++nu) {
        Mat ac = ss[mu] * ss[nu] + ss[nu] * ss[mu];
        if (mu == nu) ac -= 2.0 * sum;
        r.offdiag = std::max(r.offdiag, hs(ac));
      }
      for (std::size_t rho = 0; rho < es.size(); ++rho) {
        const double w = (rho == key.first ? 1.0 : 0.0) + (rho == key.second ? 1.0 : 0.0);
        r.mixed = std::max(r.mixed, hs(es[rho] * ss[mu] + ss[mu] * es[rho] - w * ss[mu]));
      }
    }
  }
  for (const auto& cls : f.partition) {
    for (auto idx : cls) {
      r.trace_balance = std::max(
          r.trace_balance, std::abs((es[idx].trace() - es[cls.front()].trace()).real()));
    }
  }
  return r;
}

JordanFrame build_frame(const OperatorSpace& J, const JordanOptions& opt) {
  if (J.empty()) throw FrameError("build_frame: empty Jordan algebra");
  if (J.hermiticity() != Hermiticity::Hermitian) {
    throw FrameError("build_frame: expects a Hermitian span");
  }
  JordanFrame f;
  f.dim = J.dim();
  const SpaceLayout& layout = J.layout();

  OperatorSpace cur = J;
  while (!cur.empty()) {
    if (f.idempotents.size() >= f.dim) {
      throw FrameError("build_frame: more idempotents than the dimension allows");
    }
    const Mat e = min_rank_projection(cur, opt, &f.ambiguous);
    f.idempotents.push_back(e);
    RealMat m(static_cast<Eigen::Index>(f.dim * f.dim), static_cast<Eigen::Index>(cur.rank()));
    for (std::size_t k = 0; k < cur.rank(); ++k) {
      const Mat& b = cur[k].matrix();
      m.col(static_cast<Eigen::Index>(k)) = pack(b * e + e * b, Hermiticity::Hermitian);
    }
    const auto ns = null_space(m, opt.tau_frame);
    const RealMat coords = cur.coords() * ns.basis;
    cur = OperatorSpace::from_orthonormal_coords(layout, Hermiticity::Hermitian, coords,
                                                 opt.tau_rank);
  }

  const std::size_t count = f.idempotents.size();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const Mat& ea = f.idempotents[a];
      const Mat& eb = f.idempotents[b];
      std::vector<RealVec> cands;
      for (const auto& h : J.basis()) {
        const Mat x = eb * h.matrix() * ea;
        cands.push_back(pack(herm(x + x.adjoint()), Hermiticity::Hermitian));
      }
      const OperatorSpace sp = pivoted_span(layout, cands, 1e-4, opt.tau_rank);
      if (sp.empty()) continue;
      // f-normalization: Tr(s^2) = Tr(e_a + e_b)
      const double scale =
          std::sqrt((ea + eb).trace().real() / static_cast<double>(f.dim));
      std::vector<Mat> ss;
      for (const auto& s : sp.basis()) ss.push_back(s.matrix() * scale);
      f.offdiag[{a, b}] = std::move(ss);
    }
  }

  UnionFind uf(count);
  for (const auto& [key, ss] : f.offdiag) uf.join(key.first, key.second);
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t a = 0; a < count; ++a) classes[uf.find(a)].push_back(a);
  for (auto& [root, members] : classes) {
    std::size_t chi = 0;
    if (members.size() > 1) {
      chi = f.chi_of(members[0], members[1]);
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (f.chi_of(members[i], members[j]) != chi) {
            throw FrameError("build_frame: unequal off-diagonal multiplicities inside a class");
          }
        }
      }
    }
    f.partition.push_back(members);
    f.chi.push_back(chi);
  }

  const FrameResiduals res = frame_residuals(f);
  if (res.max() > opt.tau_frame) {
    throw FrameError("build_frame: frame relations violated (residual " +
                     std::to_string(res.max()) + ")");
  }
  return f;
}

std::size_t JordanType::block_dim() const {
  std::size_t d = dim_a;
  for (auto q : q_dims) d *= q;
  return d;
}

std::size_t JordanType::algebra_dim() const {
  switch (tag) {
    case JordanTag::R: return 1;
    case JordanTag::S: return n;
    case JordanTag::M:
      if (k == 1) return gamma * (gamma + 1) / 2;
      if (k == 2) return gamma * gamma;
      return gamma * (2 * gamma - 1);
  }
  return 0;
}

std::string JordanType::label() const {
  switch (tag) {
    case JordanTag::R: return "R";
    case JordanTag::S: return "S" + std::to_string(n);
    case JordanTag::M: return "M" + std::to_string(gamma) + "^" + std::to_string(k);
  }
  return "?";
}

std::string JordanType::pretty() const {
  switch (tag) {
    case JordanTag::R: return "ℜ";
    case JordanTag::S: return "\U0001D516_" + std::to_string(n);
    case JordanTag::M:
      return "\U0001D510_" + std::to_string(gamma) + "^(" + std::to_string(k) + ")";
  }
  return "?";
}

std::vector<std::size_t> JordanType::factor_dims() const {
  std::vector<std::size_t> out{dim_a};
  out.insert(out.end(), q_dims.begin(), q_dims.end());
  return out;
}

Mat JordanType::zstar_matrix() const {
  if (zstar) return *zstar;
  const auto d = static_cast<Eigen::Index>(dim_a);
  Mat z = Mat::Identity(d, d);
  for (Eigen::Index i = static_cast<Eigen::Index>(zstar_plus); i < d; ++i) z(i, i) = -1.0;
  return z;
}

JordanType JordanType::real(std::size_t dim_a) {
  JordanType t;
  t.tag = JordanTag::R;
  t.dim_a = dim_a;
  return t;
}

JordanType JordanType::matrix(std::size_t gamma, std::size_t k, std::size_t dim_a,
                              std::size_t plus, std::size_t minus) {
  JordanType t;
  t.tag = JordanTag::M;
  t.gamma = gamma;
  t.k = k;
  t.dim_a = dim_a;
  t.q_dims = k == 4 ? std::vector<std::size_t>{2, gamma} : std::vector<std::size_t>{gamma};
  if (k == 2) {
    t.zstar_plus = plus;
    t.zstar_minus = minus;
    if (plus + minus == 0) t.zstar_plus = dim_a;
  }
  return t;
}

JordanType JordanType::spin(std::size_t n, std::size_t dim_a, std::size_t plus,
                            std::size_t minus) {
  JordanType t;
  t.tag = JordanTag::S;
  t.gamma = 2;
  t.n = n;
  t.dim_a = dim_a;
  const std::size_t np = (n + 1) / 2;
  t.q_dims.assign(np - 1, 2);
  if (n % 2 == 0) {
    t.zstar_plus = plus;
    t.zstar_minus = minus;
    if (plus + minus == 0) t.zstar_plus = dim_a;
  }
  return t;
}

TypeDescriptor descriptor(const JordanType& t) {
  return {t.label(), t.dim_a, t.q_dims, t.zstar_plus, t.zstar_minus};
}

double normalize_zstar(Mat& z, std::size_t* plus, std::size_t* minus) {
  z = herm(z);
  Eigen::SelfAdjointEigenSolver<Mat> es(z);
  std::size_t p = 0, m = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0) ++p;
    else ++m;
  }
  double sign = 1.0;
  if (m > p) {
    sign = -1.0;
  } else if (m == p) {
    for (Eigen::Index i = 0; i < z.rows() && sign == 1.0; ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < z.cols(); ++j) {
        if (std::abs(z(i, j)) > 1e-6) {
          const double v = std::abs(z(i, j).real()) > 1e-9 ? z(i, j).real() : z(i, j).imag();
          if (v < 0) sign = -1.0;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  if (sign < 0) {
    z = -z;
    std::swap(p, m);
  }
  if (plus) *plus = p;
  if (minus) *minus = m;
  return sign;
}

std::vector<Mat> spin_generators(const JordanFrame& f, std::size_t a, std::size_t b) {
  const auto& ss = f.s(a, b);
  std::vector<Mat> g;
  g.push_back(ss[0]);
  g.push_back(f.idempotents[a] - f.idempotents[b]);
  for (std::size_t i = 1; i < ss.size(); ++i) g.push_back(ss[i]);
  return g;
}

Mat clifford_vacuum(const std::vector<Mat>& gens, std::size_t pairs, const Mat& unit) {
  Mat p = unit;
  for (std::size_t j = 0; j < pairs; ++j) {
    p = p * (0.5 * (unit + kI * gens[2 * j] * gens[2 * j + 1]));
  }
  return herm(p);
}

Classification classify(const JordanFrame& frame, const OperatorSpace& J,
                        const JordanOptions& opt) {
  Classification out;
  out.ambiguous = frame.ambiguous;
  const auto n = static_cast<Eigen::Index>(frame.dim);
  const auto& es = frame.idempotents;
  std::size_t audit = 0;

  for (std::size_t c = 0; c < frame.partition.size(); ++c) {
    const auto& cls = frame.partition[c];
    JordanBlock blk;
    blk.frame_indices = cls;
    blk.chi = frame.chi[c];
    blk.projector = Mat::Zero(n, n);
    for (auto i : cls) blk.projector += es[i];
    const std::size_t gamma = cls.size();
    const Mat& e0 = es[cls.front()];
    const auto r = static_cast<std::size_t>(std::llround(e0.trace().real()));
    const std::size_t chi = blk.chi;

    if (gamma == 1) {
      blk.type = JordanType::real(r);
    } else if (gamma == 2) {
      const std::size_t nn = chi + 2;
      const std::size_t np = (nn + 1) / 2;
      const std::size_t div = pow2(np - 2);
      if (r % div != 0) throw FrameError("classify: idempotent rank incompatible with S_n");
      blk.type = JordanType::spin(nn, r / div);
      if (nn % 2 == 0) {
        const auto g = spin_generators(frame, cls[0], cls[1]);
        Mat omega = blk.projector;
        for (const auto& x : g) omega = omega * x;
        const Mat sq = omega * omega;
        if (hs(sq + blk.projector) < hs(sq - blk.projector)) omega = kI * omega;
        omega = herm(omega);
        const Mat vac = clifford_vacuum(g, np - 1, blk.projector);
        const Mat va = column_range(vac);
        Mat z = va.adjoint() * omega * va;
        const double sign =
            normalize_zstar(z, &blk.type.zstar_plus, &blk.type.zstar_minus);
        blk.type.zstar = z;
        blk.zstar_full = sign * omega;
      }
    } else {
      if (chi != 1 && chi != 2 && chi != 4) {
        throw FrameError("classify: gamma >= 3 with off-diagonal multiplicity " +
                         std::to_string(chi) + " (expected 1, 2 or 4)");
      }
      if (chi == 4 && r % 2 != 0) throw FrameError("classify: odd idempotent rank for k = 4");
      blk.type = JordanType::matrix(gamma, chi, chi == 4 ? r / 2 : r);
      if (chi == 2) {
        const auto& s01 = frame.s(cls[0], cls[1]);
        const Mat& e1 = es[cls[1]];
        const Mat a1 = e1 * s01[0] * e0;
        const Mat b = herm(-kI * a1.adjoint() * e1 * s01[1] * e0);
        const Mat v0 = column_range(e0);
        Mat z = v0.adjoint() * b * v0;
        const double sign = normalize_zstar(z, &blk.type.zstar_plus, &blk.type.zstar_minus);
        blk.type.zstar = z;
        Mat full = b;
        for (std::size_t i = 1; i < cls.size(); ++i) {
          const Mat ai = es[cls[i]] * frame.s(cls[0], cls[i])[0] * e0;
          full += ai * b * ai.adjoint();
        }
        blk.zstar_full = sign * full;
      }
    }
    audit += blk.type.algebra_dim();
    out.blocks.push_back(std::move(blk));
  }

  Mat total = Mat::Zero(n, n);
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    total += out.blocks[i].projector;
    for (std::size_t j = i + 1; j < out.blocks.size(); ++j) {
      out.projector_residual = std::max(
          out.projector_residual, hs(out.blocks[i].projector * out.blocks[j].projector));
    }
  }
  out.projector_residual = std::max(out.projector_residual, hs(total - Mat::Identity(n, n)));
  out.dimension_audit =
      std::abs(static_cast<double>(audit) - static_cast<double>(J.rank()));
  (void)opt;
  return out;
}

}  // namespace dla
