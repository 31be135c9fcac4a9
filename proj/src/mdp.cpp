#include "drmpg/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace drmpg {

namespace {
constexpr double kRowTol = 1e-12;
}

EpisodicMdp::EpisodicMdp(int n_states, int n_actions, int start_state,
                         int terminal_state, int episode_cap)
    : n_states_(n_states),
      n_actions_(n_actions),
      start_state_(start_state),
      terminal_state_(terminal_state),
      episode_cap_(episode_cap),
      rows_(static_cast<std::size_t>(n_states) * n_actions) {
  if (n_states < 2 || n_actions < 1)
    throw std::invalid_argument("EpisodicMdp: need >= 2 states and >= 1 action");
  if (start_state < 0 || start_state >= n_states || terminal_state < 0 ||
      terminal_state >= n_states || start_state == terminal_state)
    throw std::invalid_argument("EpisodicMdp: bad start/terminal ids");
  if (episode_cap < 1) throw std::invalid_argument("EpisodicMdp: episode_cap must be >= 1");
}

void EpisodicMdp::add_transition(int s, int a, int next, double prob, double reward) {
  if (validated_) throw std::logic_error("EpisodicMdp: frozen after validate()");
  if (s < 0 || s >= n_states_ || next < 0 || next >= n_states_ || a < 0 || a >= n_actions_)
    throw std::invalid_argument("EpisodicMdp: transition ids out of range");
  if (!(prob >= 0.0) || !std::isfinite(reward))
    throw std::invalid_argument("EpisodicMdp: bad transition prob/reward");
  if (prob == 0.0) return;
  rows_[static_cast<std::size_t>(s) * n_actions_ + a].push_back({next, prob, reward});
}

void EpisodicMdp::validate() {
  for (int a = 0; a < n_actions_; ++a) {
    auto& row = rows_[static_cast<std::size_t>(terminal_state_) * n_actions_ + a];
    if (row.empty()) row.push_back({terminal_state_, 1.0, 0.0});
    for (const auto& e : row)
      if (e.next != terminal_state_ || e.reward != 0.0)
        throw std::invalid_argument("EpisodicMdp: terminal state must self-loop with zero reward");
  }
  r_max_ = 0.0;
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const auto& row = rows_[static_cast<std::size_t>(s) * n_actions_ + a];
      if (row.empty())
        throw std::invalid_argument("EpisodicMdp: no transitions for state " +
                                    std::to_string(s) + " action " + std::to_string(a));
      double total = 0.0;
      for (const auto& e : row) {
        total += e.prob;
        r_max_ = std::max(r_max_, std::abs(e.reward));
      }
      if (std::abs(total - 1.0) > kRowTol)
        throw std::invalid_argument("EpisodicMdp: transition row (" + std::to_string(s) +
                                    "," + std::to_string(a) + ") sums to " +
                                    std::to_string(total));
    }
  }
  validated_ = true;
}

SoftmaxPolicy::SoftmaxPolicy(int n_states, int n_actions)
    : SoftmaxPolicy(n_states, n_actions,
                    Vector::Zero(static_cast<Eigen::Index>(n_states) * n_actions)) {}

SoftmaxPolicy::SoftmaxPolicy(int n_states, int n_actions, Vector theta)
    : n_states_(n_states), n_actions_(n_actions), theta_(std::move(theta)) {
  if (n_states < 1 || n_actions < 1)
    throw std::invalid_argument("SoftmaxPolicy: bad sizes");
  if (theta_.size() != static_cast<Eigen::Index>(n_states) * n_actions)
    throw std::invalid_argument("SoftmaxPolicy: theta dimension mismatch");
}

Vector SoftmaxPolicy::probs(int s) const {
  const auto block = theta_.segment(static_cast<Eigen::Index>(s) * n_actions_, n_actions_);
  Vector p = (block.array() - block.maxCoeff()).exp();
  p /= p.sum();
  return p;
}

double SoftmaxPolicy::prob(int s, int a) const { return probs(s)(a); }

double SoftmaxPolicy::log_prob(int s, int a) const {
  const auto block = theta_.segment(static_cast<Eigen::Index>(s) * n_actions_, n_actions_);
  const double shift = block.maxCoeff();
  const double lse = std::log((block.array() - shift).exp().sum()) + shift;
  return block(a) - lse;
}

Vector SoftmaxPolicy::score(int s, int a) const {
  Vector out = Vector::Zero(theta_.size());
  accumulate_score(s, a, out);
  return out;
}

void SoftmaxPolicy::accumulate_score(int s, int a, Vector& acc) const {
  const Vector p = probs(s);
  const Eigen::Index base = static_cast<Eigen::Index>(s) * n_actions_;
  acc.segment(base, n_actions_) -= p;
  acc(base + a) += 1.0;
}

int sample_next_state(const EpisodicMdp& mdp, int s, int a, rng::Engine& eng,
                      double* reward) {
  const auto row = mdp.outgoing(s, a);
  const double u = eng.uniform01();
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < row.size(); ++i) {
    cum += row[i].prob;
    if (u < cum) {
      *reward = row[i].reward;
      return row[i].next;
    }
  }
  *reward = row.back().reward;
  return row.back().next;
}

Episode rollout(const EpisodicMdp& mdp, const SoftmaxPolicy& behavior,
                const SoftmaxPolicy& target, double gamma, std::uint64_t rng_seed) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("rollout: gamma must lie in (0,1)");
  rng::Engine eng(rng_seed);
  Episode ep;
  ep.score_sum = Vector::Zero(target.dim());
  int s = mdp.start_state();
  double disc = 1.0;
  for (int t = 0; t < mdp.episode_cap(); ++t) {
    if (s == mdp.terminal_state()) break;
    const Vector bp = behavior.probs(s);
    const int a = eng.categorical(std::span<const double>(bp.data(), bp.size()));
    if (!(bp(a) > 0.0))
      throw std::runtime_error("rollout: behavior policy has zero mass on a sampled action");
    double reward = 0.0;
    const int next = sample_next_state(mdp, s, a, eng, &reward);
    ep.states.push_back(s);
    ep.actions.push_back(a);
    ep.ret += disc * reward;
    disc *= gamma;
    target.accumulate_score(s, a, ep.score_sum);
    ep.is_ratio *= target.prob(s, a) / bp(a);
    s = next;
  }
  ep.length = static_cast<int>(ep.actions.size());
  return ep;
}

Episode rollout(const EpisodicMdp& mdp, const SoftmaxPolicy& policy, double gamma,
                std::uint64_t rng_seed) {
  return rollout(mdp, policy, policy, gamma, rng_seed);
}

double tight_return_bound(const EpisodicMdp& mdp, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("tight_return_bound: gamma must lie in (0,1)");
  const double full = mdp.r_max() / (1.0 - gamma);
  const double capped =
      mdp.r_max() * (1.0 - std::pow(gamma, mdp.episode_cap())) / (1.0 - gamma);
  return std::min(full, capped);
}

// --- Frozen Lake -----------------------------------------------------------

namespace {

struct Grid {
  std::vector<std::string> rows;
  int n_rows = 0;
  int n_cols = 0;
  int start_r = -1, start_c = -1;
};

Grid parse_layout(const std::string& layout) {
  Grid grid;
  std::istringstream in(layout);
  std::string line;
  int goals = 0;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (grid.n_cols == 0) grid.n_cols = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != grid.n_cols)
      throw std::invalid_argument("frozen_lake: ragged layout rows");
    for (int c = 0; c < grid.n_cols; ++c) {
      const char ch = line[c];
      if (ch != 'S' && ch != 'F' && ch != 'H' && ch != 'G')
        throw std::invalid_argument("frozen_lake: bad cell character");
      if (ch == 'S') {
        if (grid.start_r >= 0) throw std::invalid_argument("frozen_lake: multiple start cells");
        grid.start_r = grid.n_rows;
        grid.start_c = c;
      }
      if (ch == 'G') ++goals;
    }
    grid.rows.push_back(line);
    ++grid.n_rows;
  }
  if (grid.n_rows == 0) throw std::invalid_argument("frozen_lake: empty layout");
  if (grid.start_r < 0) throw std::invalid_argument("frozen_lake: no start cell");
  if (goals == 0) throw std::invalid_argument("frozen_lake: no goal cell");
  return grid;
}

}  // namespace

EpisodicMdp frozen_lake(const std::string& layout, const FrozenLakeConfig& cfg) {
  if (!(cfg.slip > 0.0 && cfg.slip <= 1.0))
    throw std::invalid_argument("frozen_lake: slip must lie in (0,1]");
  const Grid grid = parse_layout(layout);
  const int n_cells = grid.n_rows * grid.n_cols;
  const int n_states = n_cells + 1;  // terminal = 0, cells shifted by 1
  const int n_actions = 4;           // left, down, right, up
  const int start = 1 + grid.start_r * grid.n_cols + grid.start_c;
  EpisodicMdp mdp(n_states, n_actions, start, 0, cfg.episode_cap);

  static constexpr int kDr[4] = {0, 1, 0, -1};
  static constexpr int kDc[4] = {-1, 0, 1, 0};
  // Perpendicular slip directions per action: left/right slip up/down and
  // vice versa.
  static constexpr int kPerp[4][2] = {{3, 1}, {0, 2}, {3, 1}, {0, 2}};

  for (int r = 0; r < grid.n_rows; ++r) {
    for (int c = 0; c < grid.n_cols; ++c) {
      const int s = 1 + r * grid.n_cols + c;
      const char cell = grid.rows[r][c];
      if (cell == 'H' || cell == 'G') {
        // Never occupied: landing on these cells transitions straight to
        // terminal below. Rows still need to be well-formed.
        for (int a = 0; a < n_actions; ++a) mdp.add_transition(s, a, 0, 1.0, 0.0);
        continue;
      }
      for (int a = 0; a < n_actions; ++a) {
        // direction -> (probability), merged over coincident landings
        std::vector<std::pair<int, double>> moves = {
            {a, cfg.slip},
            {kPerp[a][0], (1.0 - cfg.slip) / 2.0},
            {kPerp[a][1], (1.0 - cfg.slip) / 2.0},
        };
        std::vector<TransitionEntry> merged;
        for (const auto& [dir, p] : moves) {
          if (p <= 0.0) continue;
          int nr = r + kDr[dir], nc = c + kDc[dir];
          if (nr < 0 || nr >= grid.n_rows || nc < 0 || nc >= grid.n_cols) {
            nr = r;  // off-grid keeps the agent in place
            nc = c;
          }
          const char land = grid.rows[nr][nc];
          int next;
          double reward;
          if (land == 'H') {
            next = 0;
            reward = cfg.hole_reward;
          } else if (land == 'G') {
            next = 0;
            reward = cfg.goal_reward;
          } else {
            next = 1 + nr * grid.n_cols + nc;
            reward = cfg.step_reward;
          }
          bool found = false;
          for (auto& e : merged) {
            if (e.next == next && e.reward == reward) {
              e.prob += p;
              found = true;
              break;
            }
          }
          if (!found) merged.push_back({next, p, reward});
        }
        for (const auto& e : merged) mdp.add_transition(s, a, e.next, e.prob, e.reward);
      }
    }
  }
  mdp.validate();
  return mdp;
}

const std::string& default_frozen_lake_layout() {
  // The 8 holes form a field across rows 1-2, columns 3-6: the direct
  // diagonal route skirts it (risky, short) while the detour down the left
  // edge and along the bottom rows never passes next to a hole (safe, long).
  static const std::string layout =
      "SFFFFFFFF\n"
      "FFFHHHHFF\n"
      "FFFHHHHFF\n"
      "FFFFFFFFF\n"
      "FFFFFFFFF\n"
      "FFFFFFFFG\n";
  return layout;
}

// --- Plain-text MDP descriptions and policy snapshots -----------------------

EpisodicMdp parse_mdp_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n_states = -1, n_actions = -1, start = -1, terminal = -1, cap = -1;
  struct Entry {
    int s, a, next;
    double prob, reward;
  };
  std::vector<Entry> entries;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto need = [&](auto&... vals) {
      if (!((ls >> vals) && ...))
        throw std::invalid_argument("parse_mdp_text: malformed line " + std::to_string(lineno));
    };
    if (key == "states") need(n_states);
    else if (key == "actions") need(n_actions);
    else if (key == "start") need(start);
    else if (key == "terminal") need(terminal);
    else if (key == "cap") need(cap);
    else if (key == "t") {
      Entry e{};
      need(e.s, e.a, e.next, e.prob, e.reward);
      entries.push_back(e);
    } else {
      throw std::invalid_argument("parse_mdp_text: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
    }
  }
  if (n_states < 0 || n_actions < 0 || start < 0 || terminal < 0 || cap < 0)
    throw std::invalid_argument("parse_mdp_text: missing header field");
  EpisodicMdp mdp(n_states, n_actions, start, terminal, cap);
  for (const auto& e : entries) mdp.add_transition(e.s, e.a, e.next, e.prob, e.reward);
  mdp.validate();
  return mdp;
}

void save_policy(std::ostream& out, const SoftmaxPolicy& policy) {
  out << policy.n_states() << ' ' << policy.n_actions() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < policy.params().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", policy.params()(i));
    out << buf << '\n';
  }
}

SoftmaxPolicy load_policy(std::istream& in) {
  int n_states = 0, n_actions = 0;
  if (!(in >> n_states >> n_actions))
    throw std::invalid_argument("load_policy: missing header");
  Vector theta(static_cast<Eigen::Index>(n_states) * n_actions);
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    if (!(in >> theta(i))) throw std::invalid_argument("load_policy: truncated parameters");
  return {n_states, n_actions, std::move(theta)};
}

}  // namespace drmpg
