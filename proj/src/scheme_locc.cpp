#include "gaussep/scheme_locc.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"
#include "gaussep/sampler.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace gaussep {

namespace {

// Phase-space indices.
constexpr int kQ1 = 0;
constexpr int kP1 = 1;
constexpr int kQ2 = 2;
constexpr int kP2 = 3;

struct PairStats {
  MomentEstimate mean_x;
  MomentEstimate mean_y;
  MomentEstimate var_x;
  MomentEstimate var_y;
  MomentEstimate cov_xy;
};

// Unbiased sample moments of joint outcomes (x_i, y_i).
PairStats pair_stats(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  PairStats s;
  s.mean_x = mean_estimate(x);
  s.mean_y = mean_estimate(y);
  std::vector<double> dxx(n), dyy(n), dxy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - s.mean_x.value;
    const double dy = y[i] - s.mean_y.value;
    dxx[i] = dx * dx;
    dyy[i] = dy * dy;
    dxy[i] = dx * dy;
  }
  const double bessel = static_cast<double>(n) / static_cast<double>(n - 1);
  s.var_x = mean_estimate(dxx);
  s.var_y = mean_estimate(dyy);
  s.cov_xy = mean_estimate(dxy);
  for (MomentEstimate* m : {&s.var_x, &s.var_y, &s.cov_xy}) {
    m->value *= bessel;
    m->std_error *= bessel;
  }
  return s;
}

struct Outcomes {
  std::vector<double> x;
  std::vector<double> y;
};

void set_entry(CovarianceEstimate& est, int i, int j, const MomentEstimate& m) {
  est.gamma_hat(i, j) = est.gamma_hat(j, i) = m.value;
  est.std_errors(i, j) = est.std_errors(j, i) = m.std_error;
}

}  // namespace

std::uint64_t FiveGroupPlan::classical_bits() const {
  if (variant == LoccVariant::SchemeI) return 0;
  return 2 * 4 * static_cast<std::uint64_t>(shots_per_group) + 1;
}

LoccEstimate run_locc(const GaussianState& state, const FiveGroupPlan& plan, std::uint64_t seed) {
  if (state.n_modes() != 2) throw UnsupportedError("LOCC schemes need a two-mode state");
  if (!validate(state)) throw InvalidCovarianceError("state violates the uncertainty relation");
  if (plan.shots_per_group < kMinShotsPerGroup) {
    std::ostringstream os;
    os << "LOCC scheme needs at least " << kMinShotsPerGroup << " shots per group (got " << plan.shots_per_group
       << ")";
    throw InsufficientShotsError(os.str());
  }
  const std::size_t n = plan.shots_per_group;

  // Joint outcomes of the four quadrature pairs, indexed A, B, D, E.
  constexpr std::array<std::pair<int, int>, 4> kPairs = {{{kQ1, kQ2}, {kP1, kP2}, {kQ1, kP2}, {kP1, kQ2}}};
  constexpr std::array<LoccGroup, 4> kPairGroups = {LoccGroup::A, LoccGroup::B, LoccGroup::D, LoccGroup::E};
  std::array<Outcomes, 4> pairs;

  if (plan.variant == LoccVariant::SchemeI) {
    for (std::size_t g = 0; g < 4; ++g) {
      const ShotBatch batch = sample_wigner(state, n, seed, static_cast<std::uint64_t>(kPairGroups[g]));
      pairs[g].x.reserve(n);
      pairs[g].y.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = batch.row(i);
        pairs[g].x.push_back(row[static_cast<std::size_t>(kPairs[g].first)]);
        pairs[g].y.push_back(row[static_cast<std::size_t>(kPairs[g].second)]);
      }
    }
  } else {
    const ShotBatch batch = sample_wigner(state, 4 * n, seed, 10);
    Rng choice_rng = make_stream(seed, 11);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < 4 * n; ++i) {
      const bool alice_p = coin(choice_rng);
      const bool bob_p = coin(choice_rng);
      // (q,q) -> A, (p,p) -> B, (q,p) -> D, (p,q) -> E
      const std::size_t g = alice_p == bob_p ? (alice_p ? 1 : 0) : (alice_p ? 3 : 2);
      const auto row = batch.row(i);
      pairs[g].x.push_back(row[static_cast<std::size_t>(kPairs[g].first)]);
      pairs[g].y.push_back(row[static_cast<std::size_t>(kPairs[g].second)]);
    }
    for (std::size_t g = 0; g < 4; ++g) {
      if (pairs[g].x.size() < 2) {
        throw InsufficientShotsError("Scheme II left fewer than two shots for a quadrature pair");
      }
    }
  }

  // Group C: pseudo-measurement of the two symmetrized products.
  const std::uint64_t c_stream = plan.variant == LoccVariant::SchemeI ? static_cast<std::uint64_t>(LoccGroup::C) : 12;
  const ShotBatch c_batch = sample_wigner(state, n, seed, c_stream);
  const MomentEstimate sym1 = estimate_functional(c_batch, [](std::span<const double> x) { return x[kQ1] * x[kP1]; });
  const MomentEstimate sym2 = estimate_functional(c_batch, [](std::span<const double> x) { return x[kQ2] * x[kP2]; });

  const PairStats a = pair_stats(pairs[0].x, pairs[0].y);
  const PairStats b = pair_stats(pairs[1].x, pairs[1].y);
  const PairStats d = pair_stats(pairs[2].x, pairs[2].y);
  const PairStats e = pair_stats(pairs[3].x, pairs[3].y);

  LoccEstimate est;
  est.means_hat << a.mean_x.value, b.mean_x.value, a.mean_y.value, b.mean_y.value;
  est.means_std_errors << a.mean_x.std_error, b.mean_x.std_error, a.mean_y.std_error, b.mean_y.std_error;

  set_entry(est, kQ1, kQ1, a.var_x);
  set_entry(est, kQ2, kQ2, a.var_y);
  set_entry(est, kQ1, kQ2, a.cov_xy);
  set_entry(est, kP1, kP1, b.var_x);
  set_entry(est, kP2, kP2, b.var_y);
  set_entry(est, kP1, kP2, b.cov_xy);
  set_entry(est, kQ1, kP2, d.cov_xy);
  set_entry(est, kP1, kQ2, e.cov_xy);

  // Cov(q,p) = <sym> - <q><p>, the means coming from independent groups.
  auto sym_cov = [](const MomentEstimate& sym, const MomentEstimate& q, const MomentEstimate& p) {
    MomentEstimate m;
    m.value = sym.value - q.value * p.value;
    m.std_error = std::sqrt(sym.std_error * sym.std_error + p.value * p.value * q.std_error * q.std_error +
                            q.value * q.value * p.std_error * p.std_error);
    m.n_shots = sym.n_shots;
    return m;
  };
  set_entry(est, kQ1, kP1, sym_cov(sym1, a.mean_x, b.mean_x));
  set_entry(est, kQ2, kP2, sym_cov(sym2, a.mean_y, b.mean_y));

  est.classical_bits = plan.classical_bits();
  est.group_shots[static_cast<std::size_t>(LoccGroup::A)] = pairs[0].x.size();
  est.group_shots[static_cast<std::size_t>(LoccGroup::B)] = pairs[1].x.size();
  est.group_shots[static_cast<std::size_t>(LoccGroup::C)] = n;
  est.group_shots[static_cast<std::size_t>(LoccGroup::D)] = pairs[2].x.size();
  est.group_shots[static_cast<std::size_t>(LoccGroup::E)] = pairs[3].x.size();
  est.shots_used = plan.total_shots();
  return est;
}

}  // namespace gaussep
