#include "scv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scv/bergman.hpp"
#include "scv/parallel.hpp"
#include "scv/rng.hpp"
#include "scv/simd/membership.hpp"

namespace scv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::uint64_t kSamplesPerBlock = 1U << 14;

void require_supported_point(const DomainSpec& domain, const ComplexPoint& w) {
  if (w.dim() != domain.dim()) throw InvalidArgument("point dimension does not match domain");
  if (!green_supported(domain, w)) throw Unsupported("no closed-form Green function for this domain and point");
  if (!contains(domain, w)) throw OutsideDomain("point lies outside the domain");
}

void require_vector(const DomainSpec& domain, const ComplexPoint& X) {
  if (X.dim() != domain.dim()) throw InvalidArgument("vector dimension does not match domain");
}

double disc_azukawa(double r, Complex offset, Complex X) {
  return r * std::abs(X) / (r * r - std::norm(offset));
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return m;
}

void flatten_factors(const DomainSpec& d, std::vector<DomainSpec>& out) {
  if (const auto* p = d.get_if<Product>()) {
    for (const auto& f : p->factors) flatten_factors(f, out);
  } else {
    out.push_back(d);
  }
}

struct GenericLeaf {
  std::size_t offset;
  DomainSpec base;
  ComplexMatrix inverse;
};

struct MembershipProgram {
  std::vector<simd::QuadricBlock> quadrics;
  std::vector<GenericLeaf> generic;
};

simd::QuadricBlock make_block(std::size_t offset, const ComplexMatrix& inv, simd::QuadricBlock::Kind kind) {
  simd::QuadricBlock b{offset, static_cast<std::size_t>(inv.rows()), kind, {}, {}};
  for (Eigen::Index r = 0; r < inv.rows(); ++r) {
    for (Eigen::Index c = 0; c < inv.cols(); ++c) {
      b.inv_re.push_back(inv(r, c).real());
      b.inv_im.push_back(inv(r, c).imag());
    }
  }
  return b;
}

MembershipProgram compile(const AffineModel& model) {
  std::vector<DomainSpec> leaves;
  flatten_factors(model.base, leaves);
  MembershipProgram prog;
  std::size_t off = 0;
  for (const auto& leaf : leaves) {
    const auto d = static_cast<Eigen::Index>(leaf.dim());
    const auto o = static_cast<Eigen::Index>(off);
    const ComplexMatrix inv = model.map.block(o, o, d, d).inverse();
    if (leaf.get_if<Ball>() != nullptr) {
      prog.quadrics.push_back(make_block(off, inv, simd::QuadricBlock::Kind::euclidean));
    } else if (const auto* disc = leaf.get_if<Disc>(); disc != nullptr && disc->center == Complex{}) {
      prog.quadrics.push_back(make_block(off, inv / disc->radius, simd::QuadricBlock::Kind::euclidean));
    } else if (const auto* poly = leaf.get_if<Polydisc>()) {
      ComplexMatrix scaled = inv;
      for (Eigen::Index r = 0; r < d; ++r) scaled.row(r) /= poly->radii[static_cast<std::size_t>(r)];
      prog.quadrics.push_back(make_block(off, scaled, simd::QuadricBlock::Kind::polydisc));
    } else {
      prog.generic.push_back({off, leaf, inv});
    }
    off += leaf.dim();
  }
  return prog;
}

bool generic_inside(const GenericLeaf& leaf, const std::vector<std::vector<double>>& coords, std::size_t i) {
  const auto d = static_cast<Eigen::Index>(leaf.base.dim());
  Eigen::VectorXcd x(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const std::size_t j = leaf.offset + static_cast<std::size_t>(c);
    x(c) = Complex(coords[2 * j][i], coords[2 * j + 1][i]);
  }
  const Eigen::VectorXcd y = leaf.inverse * x;
  return contains(leaf.base, ComplexPoint(std::vector<Complex>(y.data(), y.data() + y.size())));
}

}  // namespace

double azukawa(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X) {
  require_supported_point(domain, w);
  require_vector(domain, X);
  if (domain.is_balanced() && w.is_zero()) return gauge(domain, X);
  return std::visit(
      overloaded{
          [&](const Disc& d) { return disc_azukawa(d.radius, w[0] - d.center, X[0]); },
          [&](const Ball&) {
            const double s = 1.0 - w.norm_squared();
            return std::sqrt(s * X.norm_squared() + std::norm(hermitian_dot(X, w))) / s;
          },
          [&](const Polydisc& p) {
            double a = 0.0;
            for (std::size_t j = 0; j < p.radii.size(); ++j) a = std::max(a, disc_azukawa(p.radii[j], w[j], X[j]));
            return a;
          },
          [&](const Product& p) {
            double a = 0.0;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              a = std::max(a, azukawa(f, w.slice(off, f.dim()), X.slice(off, f.dim())));
              off += f.dim();
            }
            return a;
          },
          [&](const auto&) -> double { throw Unsupported("no closed-form Azukawa metric off the centre"); },
      },
      domain.variant());
}

LadderResult azukawa_ladder(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X) {
  require_supported_point(domain, w);
  require_vector(domain, X);
  LadderResult out;
  double top = 1e-2;
  auto rung_inside = [&](double lambda) { return contains(domain, w + Complex(lambda) * X); };
  while (!(rung_inside(top) && rung_inside(top * 1e-1) && rung_inside(top * 1e-2))) {
    top *= 1e-1;
    if (top < 1e-6 * (1.0 - 1e-9)) throw NumericError("Azukawa ladder escapes the domain even at lambda = 1e-6");
  }
  // Rungs drift like lambda |X| / dist(w, boundary); shrink the ladder until they agree.
  while (true) {
    for (std::size_t i = 0; i < 3; ++i) {
      const double lambda = top * std::pow(0.1, static_cast<double>(i));
      out.lambdas[i] = lambda;
      out.values[i] = std::exp(green(domain, w, w + Complex(lambda) * X) - std::log(lambda));
    }
    // Quadratic through the three rungs, evaluated at lambda = 0.
    out.extrapolated = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      double weight = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) weight *= -out.lambdas[j] / (out.lambdas[i] - out.lambdas[j]);
      }
      out.extrapolated += weight * out.values[i];
    }
    const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
    out.spread = *hi - *lo;
    out.stable = *hi == 0.0 ||
                 out.spread <= 1e-2 * std::max(std::abs(out.extrapolated), std::numeric_limits<double>::min());
    if (out.stable || top * 1e-1 < 1e-6 * (1.0 - 1e-9)) break;
    top *= 1e-1;
  }
  return out;
}

bool indicatrix_contains(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X) {
  return azukawa(domain, w, X) < 1.0;
}

AffineModel indicatrix_model(const DomainSpec& domain, const ComplexPoint& w) {
  require_supported_point(domain, w);
  const auto n = static_cast<Eigen::Index>(domain.dim());
  const ComplexPoint origin = ComplexPoint::zero(domain.dim());
  if (domain.is_balanced() && w.is_zero()) return {origin, ComplexMatrix::Identity(n, n), domain};
  return std::visit(
      overloaded{
          [&](const Disc& d) {
            const double r = d.radius;
            const double radius = (r * r - std::norm(w[0] - d.center)) / r;
            return AffineModel{origin, ComplexMatrix::Constant(1, 1, radius), DomainSpec::unit_disc()};
          },
          [&](const Ball& b) {
            const double t2 = w.norm_squared();
            const double t = std::sqrt(t2);
            Eigen::VectorXcd e(n);
            for (Eigen::Index i = 0; i < n; ++i) e(i) = w[static_cast<std::size_t>(i)] / t;
            const ComplexMatrix proj = e * e.adjoint();
            const ComplexMatrix map =
                (1.0 - t2) * proj + std::sqrt(1.0 - t2) * (ComplexMatrix::Identity(n, n) - proj);
            return AffineModel{origin, map, DomainSpec::ball(b.n)};
          },
          [&](const Polydisc& p) {
            ComplexMatrix map = ComplexMatrix::Zero(n, n);
            for (Eigen::Index j = 0; j < n; ++j) {
              const double r = p.radii[static_cast<std::size_t>(j)];
              map(j, j) = (r * r - std::norm(w[static_cast<std::size_t>(j)])) / r;
            }
            return AffineModel{origin, map, DomainSpec::polydisc(std::vector<double>(p.radii.size(), 1.0))};
          },
          [&](const Product& p) {
            std::vector<ComplexMatrix> maps;
            std::vector<DomainSpec> bases;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              AffineModel m = indicatrix_model(f, w.slice(off, f.dim()));
              maps.push_back(m.map);
              bases.push_back(m.base);
              off += f.dim();
            }
            return AffineModel{origin, block_diagonal(maps), DomainSpec::product(std::move(bases))};
          },
          [&](const auto&) -> AffineModel { throw Unsupported("no closed-form indicatrix off the centre"); },
      },
      domain.variant());
}

std::optional<Box> indicatrix_box(const DomainSpec& domain, const ComplexPoint& w) {
  const AffineModel model = indicatrix_model(domain, w);
  if (!model.base.is_bounded()) return std::nullopt;
  std::vector<DomainSpec> leaves;
  flatten_factors(model.base, leaves);
  Box box;
  std::size_t off = 0;
  for (const auto& leaf : leaves) {
    const auto leaf_box = bounding_box(leaf);
    for (std::size_t i = off; i < off + leaf.dim(); ++i) {
      double half = 0.0;
      const auto row = static_cast<Eigen::Index>(i);
      if (leaf.get_if<Ball>() != nullptr) {
        for (std::size_t j = off; j < off + leaf.dim(); ++j) half += std::norm(model.map(row, static_cast<Eigen::Index>(j)));
        half = std::sqrt(half);
      } else {
        for (std::size_t j = off; j < off + leaf.dim(); ++j) {
          half += std::abs(model.map(row, static_cast<Eigen::Index>(j))) * leaf_box->hi[2 * (j - off)];
        }
      }
      box.lo.insert(box.lo.end(), {-half, -half});
      box.hi.insert(box.hi.end(), {half, half});
    }
    off += leaf.dim();
  }
  return box;
}

std::optional<double> indicatrix_volume_exact(const DomainSpec& domain, const ComplexPoint& w) {
  const AffineModel model = indicatrix_model(domain, w);
  const auto base_volume = moment(model.base, MultiIndex::zero(domain.dim()));
  if (!base_volume) return std::nullopt;
  return model.jacobian() * *base_volume;
}

VolumeEstimate monte_carlo_volume(const AffineModel& model, const Box& box, std::uint64_t n_samples,
                                  std::uint64_t seed) {
  if (n_samples == 0) throw InvalidArgument("Monte Carlo volume needs at least one sample");
  const MembershipProgram prog = compile(model);
  const std::size_t coords = 2 * model.base.dim();
  const std::uint64_t n_blocks = (n_samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
  const simd::Level level = simd::active_level();
  std::vector<std::uint64_t> block_hits(n_blocks, 0);

  parallel_for(n_blocks, [&](std::size_t b) {
    const std::uint64_t begin = b * kSamplesPerBlock;
    const std::size_t count = static_cast<std::size_t>(std::min(kSamplesPerBlock, n_samples - begin));
    CounterRng rng(seed, b);
    std::vector<std::vector<double>> soa(coords, std::vector<double>(count));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t c = 0; c < coords; ++c) soa[c][i] = box.lo[c] + (box.hi[c] - box.lo[c]) * rng.uniform();
    }
    std::vector<const double*> ptrs(coords);
    for (std::size_t c = 0; c < coords; ++c) ptrs[c] = soa[c].data();
    std::vector<std::uint8_t> mask(count);
    simd::quadric_mask(level, prog.quadrics, ptrs.data(), count, mask.data());
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask[i] == 0) continue;
      bool inside = true;
      for (const auto& leaf : prog.generic) inside = inside && generic_inside(leaf, soa, i);
      hits += inside ? 1 : 0;
    }
    block_hits[b] = hits;
  });

  VolumeEstimate est;
  for (auto h : block_hits) est.hits += h;
  est.n_samples = n_samples;
  est.seed = seed;
  est.box_volume = box.volume();
  const double p = static_cast<double>(est.hits) / static_cast<double>(n_samples);
  est.mean = est.box_volume * p;
  est.std_error = est.box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
  return est;
}

std::optional<VolumeEstimate> indicatrix_volume(const DomainSpec& domain, const ComplexPoint& w,
                                                std::uint64_t n_samples, std::uint64_t seed) {
  const auto box = indicatrix_box(domain, w);
  if (!box) return std::nullopt;
  return monte_carlo_volume(indicatrix_model(domain, w), *box, n_samples, seed);
}

double log_sup_monomial(const DomainSpec& domain, const MultiIndex& alpha) {
  if (alpha.size() != domain.dim()) throw InvalidArgument("multi-index dimension does not match domain");
  // On {sum t_j^{p_j} < 1}, t_j = |z_j|^2, the sup of prod t_j^{alpha_j/2} sits at t_j^{p_j}
  // proportional to alpha_j / p_j.
  auto ellipsoid_log_sup = [&](const std::vector<double>& p) {
    double total = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) total += alpha[j] / p[j];
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (alpha[j] == 0) continue;
      s += alpha[j] / (2.0 * p[j]) * std::log((alpha[j] / p[j]) / total);
    }
    return s;
  };
  return std::visit(
      overloaded{
          [&](const Disc& d) -> double {
            if (d.center != Complex{}) throw Unsupported("off-centre disc is not balanced");
            return alpha[0] * std::log(d.radius);
          },
          [&](const Ball& b) { return ellipsoid_log_sup(std::vector<double>(static_cast<std::size_t>(b.n), 1.0)); },
          [&](const Polydisc& p) {
            double s = 0.0;
            for (std::size_t j = 0; j < p.radii.size(); ++j) s += alpha[j] * std::log(p.radii[j]);
            return s;
          },
          [&](const Ellipsoid& e) { return ellipsoid_log_sup(e.exponents); },
          [&](const BalancedGauge& g) -> double {
            if (!g.bounded) throw NumericError("sup norm of a monomial on an unbounded domain is infinite");
            throw Unsupported("no monomial sup formula for gauge '" + g.name + "'");
          },
          [&](const Product& p) {
            double s = 0.0;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              s += log_sup_monomial(f, alpha.slice(off, f.dim()));
              off += f.dim();
            }
            return s;
          },
      },
      domain.variant());
}

double cr_lower(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int k) {
  require_vector(domain, X);
  if (w.dim() != domain.dim()) throw InvalidArgument("point dimension does not match domain");
  if (k < 1) throw InvalidArgument("order k must be at least 1");
  if (!domain.is_balanced() || !w.is_zero()) {
    throw Unsupported("Caratheodory-Reiffen bound is available only at the centre of a balanced domain");
  }
  if (!domain.is_bounded()) throw NumericError("sup norm of a monomial on an unbounded domain is infinite");
  // f = z^alpha / sup|z^alpha| is bounded by 1 with vanishing (k-1)-jet, and f^(k)(0)X/k! = X^alpha / sup.
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& alpha : multi_indices_of_degree(domain.dim(), k)) {
    double log_x = 0.0;
    bool vanishes = false;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      if (X[j] == Complex{}) {
        vanishes = true;
        break;
      }
      log_x += alpha[j] * std::log(std::abs(X[j]));
    }
    if (vanishes) continue;
    best = std::max(best, (log_x - log_sup_monomial(domain, alpha)) / k);
  }
  return std::exp(best);
}

}  // namespace scv
