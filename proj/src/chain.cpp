#include "avgmdp/chain.hpp"

#include <algorithm>
#include <cmath>

#include "avgmdp/policy_enumeration.hpp"

namespace avgmdp {

std::string_view to_string(MdpClass c) {
  switch (c) {
    case MdpClass::Unichain:
      return "unichain";
    case MdpClass::WeaklyCommunicatingNotUnichain:
      return "weakly_communicating";
    case MdpClass::MultichainGeneral:
      return "multichain";
  }
  return "unknown";
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Tarjan's algorithm, iterative. Returns the component id of every vertex.
std::vector<std::size_t> strongly_connected(const Adjacency& adj, std::size_t& n_components) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  n_components = 0;

  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        const std::size_t w = adj[f.v][f.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = n_components;
        } while (w != v);
        ++n_components;
      }
    }
  }
  return comp;
}

Adjacency positive_edges(const Matrix& p) {
  Adjacency adj(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) adj[i].push_back(static_cast<std::size_t>(j));
  return adj;
}

ChainDecomposition decompose_graph(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::size_t n_comp = 0;
  const auto comp = strongly_connected(adj, n_comp);
  std::vector<bool> closed(n_comp, true);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : adj[v])
      if (comp[w] != comp[v]) closed[comp[v]] = false;

  std::vector<std::vector<std::size_t>> members(n_comp);
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);

  ChainDecomposition out;
  for (std::size_t c = 0; c < n_comp; ++c)
    if (closed[c]) out.recurrent_classes.push_back(members[c]);
  for (std::size_t v = 0; v < n; ++v)
    if (!closed[comp[v]]) out.transient_states.push_back(v);
  std::sort(out.recurrent_classes.begin(), out.recurrent_classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

void check_stochastic(const Matrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) throw NotStochastic("matrix is not square");
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if ((p.row(i).array() < 0.0).any())
      throw NotStochastic("negative entry in row " + std::to_string(i));
    if (std::abs(p.row(i).sum() - 1.0) > 1e-10)
      throw NotStochastic("row " + std::to_string(i) + " does not sum to one");
  }
}

}  // namespace

ChainDecomposition decompose(const Matrix& p) { return decompose_graph(positive_edges(p)); }

ChainDecomposition policy_chain(const Mdp& m, const DeterministicPolicy& pi) {
  return decompose(m.policy_matrix(pi));
}

MdpClass classify(const Mdp& m) {
  const std::size_t n = m.n_states();
  std::vector<bool> recurrent_somewhere(n, false);
  bool unichain = true;
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    const auto chain = policy_chain(m, pi);
    if (chain.recurrent_classes.size() != 1) unichain = false;
    for (const auto& cls : chain.recurrent_classes)
      for (std::size_t s : cls) recurrent_somewhere[s] = true;
    return true;
  });
  if (unichain) return MdpClass::Unichain;

  Adjacency any_action(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t next = 0; next < n; ++next)
      for (std::size_t a = 0; a < m.n_actions(); ++a)
        if (m.probability(s, a, next) > 0.0) {
          any_action[s].push_back(next);
          break;
        }
  std::size_t n_comp = 0;
  const auto comp = strongly_connected(any_action, n_comp);
  std::size_t shared = static_cast<std::size_t>(-1);
  for (std::size_t s = 0; s < n; ++s) {
    if (!recurrent_somewhere[s]) continue;
    if (shared == static_cast<std::size_t>(-1)) shared = comp[s];
    if (comp[s] != shared) return MdpClass::MultichainGeneral;
  }
  return MdpClass::WeaklyCommunicatingNotUnichain;
}

Matrix cesaro_limit(const Matrix& p) {
  check_stochastic(p);
  const Eigen::Index n = p.rows();
  const auto chain = decompose(p);
  Matrix limit = Matrix::Zero(n, n);

  std::vector<ValueVector> stationary;
  for (const auto& cls : chain.recurrent_classes) {
    const Eigen::Index c = static_cast<Eigen::Index>(cls.size());
    Matrix system(c, c);
    for (Eigen::Index i = 0; i < c; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        system(i, j) = p(cls[j], cls[i]) - (i == j ? 1.0 : 0.0);
    system.row(c - 1).setOnes();
    ValueVector rhs = ValueVector::Zero(c);
    rhs(c - 1) = 1.0;
    const ValueVector pi = system.partialPivLu().solve(rhs);
    for (std::size_t i : cls)
      for (Eigen::Index j = 0; j < c; ++j) limit(i, cls[j]) = pi(j);
    stationary.push_back(pi);
  }

  const auto& transient = chain.transient_states;
  if (!transient.empty()) {
    const Eigen::Index t = static_cast<Eigen::Index>(transient.size());
    const Eigen::Index n_classes = static_cast<Eigen::Index>(chain.recurrent_classes.size());
    Matrix q(t, t);
    for (Eigen::Index i = 0; i < t; ++i)
      for (Eigen::Index j = 0; j < t; ++j)
        q(i, j) = (i == j ? 1.0 : 0.0) - p(transient[i], transient[j]);
    Matrix into(t, n_classes);
    for (Eigen::Index i = 0; i < t; ++i)
      for (Eigen::Index c = 0; c < n_classes; ++c) {
        double mass = 0.0;
        for (std::size_t s : chain.recurrent_classes[c]) mass += p(transient[i], s);
        into(i, c) = mass;
      }
    const Matrix absorption = q.partialPivLu().solve(into);
    for (Eigen::Index i = 0; i < t; ++i)
      for (Eigen::Index c = 0; c < n_classes; ++c) {
        const auto& cls = chain.recurrent_classes[c];
        for (std::size_t j = 0; j < cls.size(); ++j)
          limit(transient[i], cls[j]) = absorption(i, c) * stationary[c](j);
      }
  }
  return limit;
}

ValueVector policy_gain(const Mdp& m, const DeterministicPolicy& pi) {
  return cesaro_limit(m.policy_matrix(pi)) * m.policy_reward(pi);
}

Matrix deviation_matrix(const Mdp& m, const DeterministicPolicy& pi) {
  const Matrix p = m.policy_matrix(pi);
  const Matrix limit = cesaro_limit(p);
  const Eigen::Index n = p.rows();
  const Matrix identity = Matrix::Identity(n, n);
  Eigen::FullPivLU<Matrix> lu(identity - p + limit);
  if (!lu.isInvertible()) throw SingularSystem("I - P + P* is singular");
  return lu.solve(identity - limit);
}

double policy_error(const Mdp& m, const DeterministicPolicy& pi, const ValueVector& g_star) {
  check_vector(m, g_star, "g*");
  return sup_error(policy_gain(m, pi), g_star);
}

double epsilon_gap(const Mdp& m, const ValueVector& g_star) {
  check_vector(m, g_star, "g*");
  const std::size_t n = m.n_states();
  Matrix deviation(n, m.n_actions());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < m.n_actions(); ++a)
      deviation(s, a) = std::abs(m.row(s, a).dot(g_star) - g_star(s));

  double best = std::numeric_limits<double>::infinity();
  for_each_policy(m, [&](const DeterministicPolicy& pi) {
    double gap = 0.0;
    for (std::size_t s = 0; s < n; ++s) gap = std::max(gap, deviation(s, pi[s]));
    if (gap > kGainFixTolerance) best = std::min(best, gap);
    return true;
  });
  return best;
}

}  // namespace avgmdp
