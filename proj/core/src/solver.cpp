#include "satgen/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "satgen/errors.hpp"

namespace satgen {

namespace {

using Clock = std::chrono::steady_clock;

// Literal encoding: 2*var for x, 2*var+1 for !x. Truth values are int8_t:
// -1 unassigned, 0 false, 1 true.
constexpr int kNoReason = -1;

class Solver {
public:
  Solver(const CnfFormula& formula, const SolverConfig& config)
      : formula_(formula), config_(config), num_vars_(formula.num_vars()) {
    assigns_.assign(num_vars_, -1);
    level_.assign(num_vars_, 0);
    reason_.assign(num_vars_, kNoReason);
    seen_.assign(num_vars_, 0);
    activity_.assign(num_vars_, 0.0);
    watchers_.assign(2 * static_cast<std::size_t>(num_vars_), {});
    for (const Clause& clause : formula.clauses()) {
      std::vector<int> lits;
      lits.reserve(clause.size());
      for (const Literal& lit : clause.literals)
        lits.push_back(2 * lit.var + (lit.negated ? 1 : 0));
      add_clause(std::move(lits));
    }
  }

  /// Runs the search from the current root state. Re-entrant: callers may
  /// add blocking clauses between calls.
  SolveStatus run() {
    start_ = Clock::now();
    backtrack_to(0);
    if (root_conflict_ || !place_root_units()) {
      stop_clock();
      return SolveStatus::unsat;
    }
    if (propagate() != kNoReason) {
      stop_clock();
      return SolveStatus::unsat;
    }
    SolveStatus status = config_.use_cdcl ? search_cdcl() : search_dpll();
    stop_clock();
    return status;
  }

  Assignment model() const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_vars_));
    for (int v = 0; v < num_vars_; ++v)
      bits[static_cast<std::size_t>(v)] = assigns_[static_cast<std::size_t>(v)] == 1;
    return Assignment(std::move(bits));
  }

  /// Blocks a full assignment by adding the clause of all disagreeing
  /// literals. Returns false when the clause is already falsified at root
  /// (i.e. the assignment was the last model).
  bool block(const Assignment& model) {
    backtrack_to(0);
    std::vector<int> lits;
    lits.reserve(static_cast<std::size_t>(num_vars_));
    for (int v = 0; v < num_vars_; ++v) lits.push_back(2 * v + (model.value(v) ? 1 : 0));
    // Root-assigned vars agree with every model, so their blocking literals
    // are false; move the live (unassigned) literals to the watch positions.
    std::stable_partition(lits.begin(), lits.end(),
                          [&](int lit) { return value(lit) == -1; });
    if (value(lits[0]) != -1) {
      root_conflict_ = true;
      return false;
    }
    if (lits.size() == 1 || value(lits[1]) != -1) {
      // Every other literal is root-false: the clause reduces to a unit.
      root_units_.push_back(lits[0]);
      return true;
    }
    add_clause(std::move(lits));
    return true;
  }

  const SolveStats& stats() const { return stats_; }

private:
  int value(int lit) const {
    int8_t a = assigns_[static_cast<std::size_t>(lit >> 1)];
    return a < 0 ? -1 : (a ^ (lit & 1));
  }

  int current_level() const { return static_cast<int>(trail_lim_.size()); }

  void add_clause(std::vector<int> lits) {
    if (lits.size() == 1) {
      root_units_.push_back(lits[0]);
      return;
    }
    int id = static_cast<int>(clauses_.size());
    watchers_[static_cast<std::size_t>(lits[0])].push_back(id);
    watchers_[static_cast<std::size_t>(lits[1])].push_back(id);
    clauses_.push_back(std::move(lits));
  }

  bool place_root_units() {
    for (int lit : root_units_) {
      if (value(lit) == 0) return false;
      if (value(lit) == -1) enqueue(lit, kNoReason);
    }
    return true;
  }

  void enqueue(int lit, int reason) {
    int v = lit >> 1;
    assigns_[static_cast<std::size_t>(v)] = static_cast<int8_t>((lit & 1) ^ 1);
    level_[static_cast<std::size_t>(v)] = current_level();
    reason_[static_cast<std::size_t>(v)] = reason;
    trail_.push_back(lit);
  }

  /// Two-watched-literal unit propagation. Returns a conflicting clause id
  /// or kNoReason.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int false_lit = trail_[qhead_++] ^ 1;
      ++stats_.propagations;
      auto& watch_list = watchers_[static_cast<std::size_t>(false_lit)];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < watch_list.size(); ++i) {
        int c = watch_list[i];
        auto& clause = clauses_[static_cast<std::size_t>(c)];
        if (clause[0] == false_lit) std::swap(clause[0], clause[1]);
        if (value(clause[0]) == 1) {
          watch_list[keep++] = c;
          continue;
        }
        bool rewatched = false;
        for (std::size_t t = 2; t < clause.size(); ++t) {
          if (value(clause[t]) != 0) {
            std::swap(clause[1], clause[t]);
            watchers_[static_cast<std::size_t>(clause[1])].push_back(c);
            rewatched = true;
            break;
          }
        }
        if (rewatched) continue;
        watch_list[keep++] = c;
        if (value(clause[0]) == 0) {
          for (++i; i < watch_list.size(); ++i) watch_list[keep++] = watch_list[i];
          watch_list.resize(keep);
          qhead_ = trail_.size();
          return c;
        }
        enqueue(clause[0], c);
      }
      watch_list.resize(keep);
    }
    return kNoReason;
  }

  void backtrack_to(int target_level) {
    if (current_level() == target_level) return;
    std::size_t keep = trail_lim_[static_cast<std::size_t>(target_level)];
    while (trail_.size() > keep) {
      int v = trail_.back() >> 1;
      assigns_[static_cast<std::size_t>(v)] = -1;
      reason_[static_cast<std::size_t>(v)] = kNoReason;
      trail_.pop_back();
    }
    trail_lim_.resize(static_cast<std::size_t>(target_level));
    decisions_.resize(trail_lim_.size());
    qhead_ = trail_.size();
  }

  void note_conflict() {
    ++stats_.conflicts;
    if (config_.max_conflicts && stats_.conflicts > config_.max_conflicts)
      throw BudgetExceededError("solver: conflict budget " +
                                std::to_string(config_.max_conflicts) + " exceeded");
    if (config_.max_seconds > 0.0) {
      double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
      if (elapsed > config_.max_seconds)
        throw BudgetExceededError("solver: time budget exceeded");
    }
  }

  int pick_variable_dpll() const {
    for (int v = 0; v < num_vars_; ++v)
      if (assigns_[static_cast<std::size_t>(v)] < 0) return v;
    return -1;
  }

  int pick_variable_vsids() const {
    int best = -1;
    for (int v = 0; v < num_vars_; ++v) {
      if (assigns_[static_cast<std::size_t>(v)] >= 0) continue;
      if (best < 0 || activity_[static_cast<std::size_t>(v)] > activity_[static_cast<std::size_t>(best)])
        best = v;
    }
    return best;
  }

  void decide(int var, bool var_value) {
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    decisions_.push_back(Decision{var, false});
    enqueue(2 * var + (var_value ? 0 : 1), kNoReason);
  }

  SolveStatus search_dpll() {
    for (;;) {
      int conflict = propagate();
      if (conflict != kNoReason) {
        note_conflict();
        // Flip the deepest decision still on its first polarity.
        int level = current_level();
        while (level > 0 && decisions_[static_cast<std::size_t>(level - 1)].flipped) --level;
        if (level == 0) return SolveStatus::unsat;
        int var = decisions_[static_cast<std::size_t>(level - 1)].var;
        backtrack_to(level - 1);
        trail_lim_.push_back(trail_.size());
        decisions_.push_back(Decision{var, true});
        enqueue(2 * var + 0, kNoReason);  // second polarity: true
        continue;
      }
      int var = pick_variable_dpll();
      if (var < 0) return SolveStatus::sat;
      decide(var, false);
    }
  }

  SolveStatus search_cdcl() {
    for (;;) {
      int conflict = propagate();
      if (conflict != kNoReason) {
        note_conflict();
        if (current_level() == 0) return SolveStatus::unsat;
        std::vector<int> learnt;
        int backjump_level = analyze(conflict, learnt);
        backtrack_to(backjump_level);
        if (learnt.size() == 1) {
          root_units_.push_back(learnt[0]);
          enqueue(learnt[0], kNoReason);
        } else {
          int id = static_cast<int>(clauses_.size());
          watchers_[static_cast<std::size_t>(learnt[0])].push_back(id);
          watchers_[static_cast<std::size_t>(learnt[1])].push_back(id);
          clauses_.push_back(learnt);
          enqueue(learnt[0], id);
        }
        decay_activity();
        continue;
      }
      int var = pick_variable_vsids();
      if (var < 0) return SolveStatus::sat;
      decide(var, false);
    }
  }

  /// First-UIP conflict analysis. Fills learnt with the asserting literal
  /// first and returns the backjump level.
  int analyze(int conflict, std::vector<int>& learnt) {
    learnt.assign(1, 0);
    int counter = 0;
    int resolved_lit = -1;
    std::size_t index = trail_.size();
    std::vector<int> touched;

    int clause_id = conflict;
    do {
      const auto& clause = clauses_[static_cast<std::size_t>(clause_id)];
      for (std::size_t t = (resolved_lit == -1 ? 0 : 1); t < clause.size(); ++t) {
        int q = clause[t];
        int v = q >> 1;
        if (seen_[static_cast<std::size_t>(v)] || level_[static_cast<std::size_t>(v)] == 0)
          continue;
        seen_[static_cast<std::size_t>(v)] = 1;
        touched.push_back(v);
        bump_activity(v);
        if (level_[static_cast<std::size_t>(v)] >= current_level())
          ++counter;
        else
          learnt.push_back(q);
      }
      while (!seen_[static_cast<std::size_t>(trail_[--index] >> 1)]) {}
      resolved_lit = trail_[index];
      seen_[static_cast<std::size_t>(resolved_lit >> 1)] = 0;
      clause_id = reason_[static_cast<std::size_t>(resolved_lit >> 1)];
      --counter;
    } while (counter > 0);
    learnt[0] = resolved_lit ^ 1;

    int backjump = 0;
    if (learnt.size() > 1) {
      // Watch the asserting literal and the deepest of the rest.
      std::size_t best = 1;
      for (std::size_t t = 2; t < learnt.size(); ++t)
        if (level_[static_cast<std::size_t>(learnt[t] >> 1)] >
            level_[static_cast<std::size_t>(learnt[best] >> 1)])
          best = t;
      std::swap(learnt[1], learnt[best]);
      backjump = level_[static_cast<std::size_t>(learnt[1] >> 1)];
    }
    for (int v : touched) seen_[static_cast<std::size_t>(v)] = 0;
    return backjump;
  }

  void bump_activity(int var) {
    activity_[static_cast<std::size_t>(var)] += activity_increment_;
    if (activity_[static_cast<std::size_t>(var)] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      activity_increment_ *= 1e-100;
    }
  }

  void decay_activity() { activity_increment_ /= kActivityDecay; }

  void stop_clock() {
    stats_.elapsed_seconds += std::chrono::duration<double>(Clock::now() - start_).count();
  }

  struct Decision {
    int var;
    bool flipped;
  };

  static constexpr double kActivityDecay = 0.95;

  const CnfFormula& formula_;
  SolverConfig config_;
  int num_vars_;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watchers_;
  std::vector<int> root_units_;
  bool root_conflict_ = false;

  std::vector<int8_t> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<Decision> decisions_;
  std::size_t qhead_ = 0;

  std::vector<char> seen_;
  std::vector<double> activity_;
  double activity_increment_ = 1.0;

  SolveStats stats_;
  Clock::time_point start_;
};

}  // namespace

SolveResult solve(const CnfFormula& formula, const SolverConfig& config) {
  Solver solver(formula, config);
  SolveResult result;
  result.status = solver.run();
  if (result.status == SolveStatus::sat) {
    Assignment model = solver.model();
    if (!verify(formula, model))
      throw std::logic_error("solver returned a model that fails verification");
    result.model = std::move(model);
  }
  result.stats = solver.stats();
  return result;
}

std::vector<Assignment> enumerate_models(const CnfFormula& formula, std::uint64_t limit,
                                         const SolverConfig& config) {
  std::vector<Assignment> models;
  if (limit == 0) return models;
  Solver solver(formula, config);
  while (models.size() < limit) {
    if (solver.run() == SolveStatus::unsat) break;
    Assignment model = solver.model();
    if (!verify(formula, model))
      throw std::logic_error("solver returned a model that fails verification");
    models.push_back(model);
    if (!solver.block(models.back())) break;
  }
  return models;
}

}  // namespace satgen
