#include "avgmdp/harness/random_mdp.hpp"

#include <cmath>
#include <string>

namespace avgmdp::harness {

double Rng::exponential() { return -std::log1p(-uniform()); }

std::size_t Rng::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

std::string_view to_string(RandomKind k) {
  switch (k) {
    case RandomKind::General:
      return "random_general";
    case RandomKind::Unichain:
      return "random_unichain";
    case RandomKind::WeaklyCommunicating:
      return "random_weakly_comm";
  }
  return "unknown";
}

std::optional<RandomKind> parse_random_kind(std::string_view name) {
  for (RandomKind k : {RandomKind::General, RandomKind::Unichain, RandomKind::WeaklyCommunicating})
    if (to_string(k) == name) return k;
  if (name == "general") return RandomKind::General;
  if (name == "unichain") return RandomKind::Unichain;
  if (name == "weakly_comm") return RandomKind::WeaklyCommunicating;
  return std::nullopt;
}

namespace {

/// Normalized exponential draws on [0, width).
std::vector<double> simplex(Rng& rng, std::size_t width) {
  std::vector<double> w(width);
  double sum = 0.0;
  for (auto& x : w) sum += (x = rng.exponential());
  if (sum <= 0.0) {
    w.assign(width, 1.0 / static_cast<double>(width));
    return w;
  }
  for (auto& x : w) x /= sum;
  return w;
}

/// Each coordinate survives with probability 1/2; at least one always does.
std::vector<double> sparse_simplex(Rng& rng, std::size_t width) {
  std::vector<double> w(width, 0.0);
  double sum = 0.0;
  for (auto& x : w) {
    const double draw = rng.exponential();
    if (rng.uniform() < 0.5) sum += (x = draw);
  }
  if (sum <= 0.0) {
    w[rng.index(width)] = 1.0;
    return w;
  }
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace

Mdp random_mdp(RandomKind kind, std::size_t n, std::size_t n_actions, std::uint64_t seed) {
  if (n == 0 || n_actions == 0)
    throw BadSize("random MDPs need positive sizes, got " + std::to_string(n) + " states and " +
                  std::to_string(n_actions) + " actions");
  Rng rng(seed);
  MdpTables t;
  t.transition.assign(n, std::vector<std::vector<double>>(n_actions, std::vector<double>(n, 0.0)));
  t.reward.assign(n, std::vector<double>(n_actions, 0.0));
  const std::size_t block = (n + 1) / 2;

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      auto& row = t.transition[s][a];
      switch (kind) {
        case RandomKind::General:
          row = simplex(rng, n);
          break;
        case RandomKind::Unichain: {
          const auto base = simplex(rng, n);
          for (std::size_t j = 0; j < n; ++j) row[j] = 0.95 * base[j];
          row[0] += 0.05;
          break;
        }
        case RandomKind::WeaklyCommunicating: {
          const bool inside = s < block;
          const bool ring = inside && a == 0;
          const double spread = ring ? 0.90 : 0.95;
          const auto base = sparse_simplex(rng, inside ? block : n);
          for (std::size_t j = 0; j < base.size(); ++j) row[j] = spread * base[j];
          row[rng.index(block)] += 0.05;
          if (ring) row[(s + 1) % block] += 0.05;
          break;
        }
      }
      t.reward[s][a] = rng.uniform(-1.0, 1.0);
    }
  }
  return Mdp::from_tables(t);
}

ValueVector random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ValueVector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace avgmdp::harness
