#include "smsccl/sat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "smsccl/sat/clause_log.hpp"

namespace smsccl::sat {

namespace {

using CRef = uint32_t;
constexpr CRef kNoRef = std::numeric_limits<CRef>::max();
constexpr Lit kUndefLit = Lit::fromCode(0);  // variable 0 is never declared

// Clause arena layout: [header][lbd][activity bits][literal codes...]
// header = size << 2 | learnt << 1 | deleted
constexpr uint32_t kHeaderWords = 3;

struct Watcher {
  CRef cref;
  Lit blocker;
};

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  double result = 1;
  for (int i = 0; i < seq; ++i) result *= y;
  return result;
}

// Max-heap on (priority, activity).
class VarHeap {
 public:
  VarHeap(const std::vector<double>& activity, const std::vector<int>& priority)
      : activity_(activity), priority_(priority) {}

  void grow(int vars) {
    if (static_cast<int>(index_.size()) <= vars) index_.resize(vars + 1, -1);
  }
  bool contains(int v) const { return v < static_cast<int>(index_.size()) && index_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    grow(v);
    if (contains(v)) return;
    index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    siftUp(index_[v]);
  }
  void increased(int v) {
    if (contains(v)) siftUp(index_[v]);
  }
  void rebuild(const std::vector<int>& vars) {
    for (int v : heap_) index_[v] = -1;
    heap_.clear();
    for (int v : vars) insert(v);
  }
  int popMax() {
    int top = heap_.front();
    heap_.front() = heap_.back();
    index_[heap_.front()] = 0;
    index_[top] = -1;
    heap_.pop_back();
    if (heap_.size() > 1) siftDown(0);
    return top;
  }

 private:
  bool less(int a, int b) const {
    if (priority_[a] != priority_[b]) return priority_[a] > priority_[b];
    return activity_[a] > activity_[b];
  }
  void siftUp(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) >> 1;
      if (!less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    index_[v] = i;
  }
  void siftDown(int i) {
    int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) child++;
      if (!less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  const std::vector<double>& activity_;
  const std::vector<int>& priority_;
  std::vector<int> heap_;
  std::vector<int> index_;
};

}  // namespace

struct Solver::Impl {
  SolverOptions options;
  HookPolicy policy;
  Propagator* propagator = nullptr;
  ClauseLog* log = nullptr;

  int numVars = 0;
  bool ok = true;

  std::vector<LBool> assigns{LBool::Undef};
  std::vector<int> levels{0};
  std::vector<CRef> reasons{kNoRef};
  std::vector<char> polarity{1};  // saved phase: 1 = negative
  std::vector<char> seen{0};
  std::vector<double> activity{0.0};
  std::vector<int> priority{0};
  VarHeap heap{activity, priority};
  double varInc = 1.0;
  double clauseInc = 1.0;

  std::vector<Lit> trail;
  std::vector<int> trailLim;
  std::size_t qhead = 0;

  std::vector<uint32_t> arena;
  std::size_t wasted = 0;
  std::vector<CRef> permanent;
  std::vector<CRef> learnts;
  std::vector<std::vector<Watcher>> watches{2};

  std::vector<Lit> assumptions;
  std::vector<LBool> modelValues;
  SolverStats stats;
  std::string lastError;

  CRef pendingConflict = kNoRef;
  int observedTotal = 0;
  int observedAssigned = 0;
  bool observedCheckDone = false;
  uint64_t conflictsSinceHook = 0;
  uint64_t fixpointsSinceHook = 0;

  int restartIndex = 0;
  uint64_t conflictsSinceRestart = 0;
  uint64_t nextReduce = 2000;
  uint64_t reduceIncrement = 300;
  int reduceRound = 0;

  std::vector<Lit> analyzeStack;
  std::vector<int> analyzeToClear;
  std::vector<uint32_t> levelStamp{0};
  uint32_t stampCounter = 0;

  // --- clause arena ------------------------------------------------------
  uint32_t csize(CRef c) const { return arena[c] >> 2; }
  bool clearnt(CRef c) const { return (arena[c] & 2u) != 0; }
  bool cdeleted(CRef c) const { return (arena[c] & 1u) != 0; }
  void markDeleted(CRef c) { arena[c] |= 1u; }
  uint32_t& clbd(CRef c) { return arena[c + 1]; }
  float cactivity(CRef c) const {
    float f;
    std::memcpy(&f, &arena[c + 2], sizeof f);
    return f;
  }
  void setActivity(CRef c, float f) { std::memcpy(&arena[c + 2], &f, sizeof f); }
  Lit* clits(CRef c) { return reinterpret_cast<Lit*>(&arena[c + kHeaderWords]); }
  const Lit* clits(CRef c) const { return reinterpret_cast<const Lit*>(&arena[c + kHeaderWords]); }

  CRef allocClause(std::span<const Lit> lits, bool learnt) {
    static_assert(sizeof(Lit) == sizeof(uint32_t));
    CRef c = static_cast<CRef>(arena.size());
    arena.push_back(static_cast<uint32_t>(lits.size()) << 2 | (learnt ? 2u : 0u));
    arena.push_back(0);
    arena.push_back(0);
    for (Lit l : lits) arena.push_back(l.code());
    return c;
  }

  void attach(CRef c) {
    const Lit* l = clits(c);
    watches[(~l[0]).code()].push_back({c, l[1]});
    watches[(~l[1]).code()].push_back({c, l[0]});
  }

  // --- assignment --------------------------------------------------------
  LBool value(Lit l) const { return assigns[l.var()] ^ l.isNegative(); }
  int level(int v) const { return levels[v]; }
  int decisionLevel() const { return static_cast<int>(trailLim.size()); }
  bool isObserved(int v) const { return v >= policy.observedFirst && v <= policy.observedLast; }

  void growTo(int vars) {
    if (vars <= numVars) return;
    const int oldVars = numVars;
    numVars = vars;
    assigns.resize(vars + 1, LBool::Undef);
    levels.resize(vars + 1, 0);
    reasons.resize(vars + 1, kNoRef);
    polarity.resize(vars + 1, 1);
    seen.resize(vars + 1, 0);
    activity.resize(vars + 1, 0.0);
    priority.resize(vars + 1, 0);
    for (int v = oldVars + 1; v <= vars; ++v) priority[v] = branchPriority(v);
    levelStamp.resize(vars + 2, 0);
    watches.resize(2 * (vars + 1));
    heap.grow(vars);
    for (int v = 1; v <= vars; ++v) heap.insert(v);
    recountObserved();
  }

  int branchPriority(int v) const {
    if (!isObserved(v)) return 0;
    switch (policy.branchOrder) {
      case BranchOrder::Activity: return 0;
      case BranchOrder::ObservedFirst: return 1;
      case BranchOrder::ObservedSequential: return policy.observedLast - v + 1;
    }
    return 0;
  }

  void recountObserved() {
    std::vector<int> open;
    for (int v = 1; v <= numVars; ++v) {
      priority[v] = branchPriority(v);
      if (assigns[v] == LBool::Undef) open.push_back(v);
    }
    heap.rebuild(open);
    observedTotal = 0;
    observedAssigned = 0;
    for (int v = std::max(1, policy.observedFirst); v <= std::min(numVars, policy.observedLast); ++v) {
      ++observedTotal;
      if (assigns[v] != LBool::Undef) ++observedAssigned;
    }
  }

  void enqueue(Lit l, CRef reason) {
    const int v = l.var();
    assigns[v] = toLBool(!l.isNegative());
    levels[v] = decisionLevel();
    reasons[v] = reason;
    trail.push_back(l);
    if (isObserved(v)) ++observedAssigned;
  }

  void newDecisionLevel() { trailLim.push_back(static_cast<int>(trail.size())); }

  void backtrack(int target) {
    if (decisionLevel() <= target) return;
    for (int c = static_cast<int>(trail.size()) - 1; c >= trailLim[target]; --c) {
      const int v = trail[c].var();
      assigns[v] = LBool::Undef;
      reasons[v] = kNoRef;
      if (options.phaseSaving) polarity[v] = trail[c].isNegative() ? 1 : 0;
      if (isObserved(v)) --observedAssigned;
      heap.insert(v);
    }
    trail.resize(trailLim[target]);
    trailLim.resize(target);
    qhead = trail.size();
    if (observedAssigned < observedTotal) observedCheckDone = false;
  }

  // --- propagation -------------------------------------------------------
  CRef propagate() {
    CRef conflict = kNoRef;
    while (qhead < trail.size()) {
      const Lit p = trail[qhead++];
      const Lit falseLit = ~p;
      std::vector<Watcher>& ws = watches[p.code()];
      ++stats.propagations;
      Watcher* i = ws.data();
      Watcher* j = i;
      Watcher* const end = i + ws.size();
      while (i != end) {
        const Lit blocker = i->blocker;
        if (value(blocker) == LBool::True) {
          *j++ = *i++;
          continue;
        }
        const CRef cr = i->cref;
        Lit* c = clits(cr);
        const uint32_t size = csize(cr);
        if (c[0] == falseLit) std::swap(c[0], c[1]);
        ++i;
        const Lit first = c[0];
        const Watcher w{cr, first};
        if (first != blocker && value(first) == LBool::True) {
          *j++ = w;
          continue;
        }
        bool moved = false;
        for (uint32_t k = 2; k < size; ++k) {
          if (value(c[k]) != LBool::False) {
            c[1] = c[k];
            c[k] = falseLit;
            watches[(~c[1]).code()].push_back(w);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        *j++ = w;
        if (value(first) == LBool::False) {
          conflict = cr;
          qhead = trail.size();
          while (i != end) *j++ = *i++;
        } else {
          enqueue(first, cr);
        }
      }
      ws.resize(static_cast<std::size_t>(j - ws.data()));
    }
    return conflict;
  }

  // --- heuristics --------------------------------------------------------
  void bumpVar(int v) {
    if ((activity[v] += varInc) > 1e100) {
      for (int x = 1; x <= numVars; ++x) activity[x] *= 1e-100;
      varInc *= 1e-100;
    }
    heap.increased(v);
  }
  void decayVars() { varInc /= options.variableDecay; }
  void bumpClause(CRef c) {
    float a = cactivity(c) + static_cast<float>(clauseInc);
    setActivity(c, a);
    if (a > 1e20f) {
      for (CRef l : learnts) setActivity(l, cactivity(l) * 1e-20f);
      clauseInc *= 1e-20;
    }
  }
  void decayClauses() { clauseInc /= options.clauseDecay; }

  Lit pickBranch() {
    int next = 0;
    if (options.activityHeuristic) {
      while (!heap.empty()) {
        int v = heap.popMax();
        if (assigns[v] == LBool::Undef) {
          next = v;
          break;
        }
      }
    } else {
      for (int v = 1; v <= numVars; ++v) {
        if (assigns[v] == LBool::Undef) {
          next = v;
          break;
        }
      }
    }
    if (next == 0) return kUndefLit;
    const bool negative = options.phaseSaving ? polarity[next] != 0 : true;
    return Lit::make(next, negative);
  }

  // --- conflict analysis -------------------------------------------------
  uint32_t abstractLevel(int v) const { return 1u << (level(v) & 31); }

  bool litRedundant(Lit p, uint32_t abstractLevels) {
    analyzeStack.clear();
    analyzeStack.push_back(p);
    const std::size_t top = analyzeToClear.size();
    while (!analyzeStack.empty()) {
      const CRef r = reasons[analyzeStack.back().var()];
      analyzeStack.pop_back();
      const Lit* c = clits(r);
      const uint32_t size = csize(r);
      for (uint32_t i = 1; i < size; ++i) {
        const Lit q = c[i];
        const int v = q.var();
        if (seen[v] || level(v) == 0) continue;
        if (reasons[v] != kNoRef && (abstractLevel(v) & abstractLevels) != 0) {
          seen[v] = 1;
          analyzeStack.push_back(q);
          analyzeToClear.push_back(v);
        } else {
          for (std::size_t k = top; k < analyzeToClear.size(); ++k) seen[analyzeToClear[k]] = 0;
          analyzeToClear.resize(top);
          return false;
        }
      }
    }
    return true;
  }

  uint32_t computeLbd(const std::vector<Lit>& lits) {
    ++stampCounter;
    uint32_t count = 0;
    for (Lit l : lits) {
      const int lv = level(l.var());
      if (levelStamp[lv] != stampCounter) {
        levelStamp[lv] = stampCounter;
        ++count;
      }
    }
    return count;
  }

  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrackLevel) {
    int pathCount = 0;
    Lit p = kUndefLit;
    learnt.clear();
    learnt.push_back(kUndefLit);
    int index = static_cast<int>(trail.size()) - 1;
    CRef confl = conflict;
    do {
      assert(confl != kNoRef);
      if (clearnt(confl)) bumpClause(confl);
      const Lit* c = clits(confl);
      const uint32_t size = csize(confl);
      for (uint32_t j = (p == kUndefLit) ? 0 : 1; j < size; ++j) {
        const Lit q = c[j];
        const int v = q.var();
        if (!seen[v] && level(v) > 0) {
          bumpVar(v);
          seen[v] = 1;
          if (level(v) >= decisionLevel()) {
            ++pathCount;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen[trail[index--].var()]) {
      }
      p = trail[index + 1];
      confl = reasons[p.var()];
      seen[p.var()] = 0;
      --pathCount;
    } while (pathCount > 0);
    learnt[0] = ~p;

    // Recursive minimization.
    analyzeToClear.clear();
    for (std::size_t k = 1; k < learnt.size(); ++k) analyzeToClear.push_back(learnt[k].var());
    uint32_t abstractLevels = 0;
    for (std::size_t k = 1; k < learnt.size(); ++k) abstractLevels |= abstractLevel(learnt[k].var());
    std::size_t kept = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      const int v = learnt[k].var();
      if (reasons[v] == kNoRef || !litRedundant(learnt[k], abstractLevels)) learnt[kept++] = learnt[k];
    }
    learnt.resize(kept);
    for (int v : analyzeToClear) seen[v] = 0;
    for (Lit l : learnt) seen[l.var()] = 0;

    if (learnt.size() == 1) {
      backtrackLevel = 0;
    } else {
      std::size_t maxIndex = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k) {
        if (level(learnt[k].var()) > level(learnt[maxIndex].var())) maxIndex = k;
      }
      std::swap(learnt[1], learnt[maxIndex]);
      backtrackLevel = level(learnt[1].var());
    }
  }

  // --- clause database ---------------------------------------------------
  bool locked(CRef c) const {
    const Lit first = clits(c)[0];
    return value(first) == LBool::True && reasons[first.var()] == c;
  }

  void reduceLearnts() {
    std::sort(learnts.begin(), learnts.end(), [this](CRef a, CRef b) {
      const uint32_t la = arena[a + 1];
      const uint32_t lb = arena[b + 1];
      if (la != lb) return la > lb;
      return cactivity(a) < cactivity(b);
    });
    const std::size_t limit = learnts.size() / 2;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < learnts.size(); ++i) {
      const CRef c = learnts[i];
      if (i < limit && arena[c + 1] > 2 && !locked(c) && csize(c) > 2) {
        markDeleted(c);
        wasted += kHeaderWords + csize(c);
        ++stats.deletedClauses;
      } else {
        learnts[kept++] = c;
      }
    }
    learnts.resize(kept);
    for (auto& ws : watches) {
      ws.erase(std::remove_if(ws.begin(), ws.end(), [this](const Watcher& w) { return cdeleted(w.cref); }),
               ws.end());
    }
    if (wasted * 4 > arena.size()) collectGarbage();
  }

  void collectGarbage() {
    std::vector<uint32_t> fresh;
    fresh.reserve(arena.size() - wasted);
    auto move = [&](CRef c) {
      CRef n = static_cast<CRef>(fresh.size());
      fresh.insert(fresh.end(), arena.begin() + c, arena.begin() + c + kHeaderWords + csize(c));
      return n;
    };
    std::vector<std::pair<CRef, CRef>> relocation;
    relocation.reserve(permanent.size() + learnts.size());
    for (CRef& c : permanent) {
      CRef n = move(c);
      relocation.emplace_back(c, n);
      c = n;
    }
    for (CRef& c : learnts) {
      CRef n = move(c);
      relocation.emplace_back(c, n);
      c = n;
    }
    std::sort(relocation.begin(), relocation.end());
    auto relocate = [&](CRef c) {
      auto it = std::lower_bound(relocation.begin(), relocation.end(), std::make_pair(c, CRef{0}));
      assert(it != relocation.end() && it->first == c);
      return it->second;
    };
    for (Lit l : trail) {
      CRef& r = reasons[l.var()];
      if (r != kNoRef) r = relocate(r);
    }
    if (pendingConflict != kNoRef) pendingConflict = relocate(pendingConflict);
    arena.swap(fresh);
    wasted = 0;
    for (auto& ws : watches) ws.clear();
    for (CRef c : permanent) attach(c);
    for (CRef c : learnts) attach(c);
  }

  // --- logging -----------------------------------------------------------
  void logClause(const std::vector<Lit>& c) {
    if (log) log->addClause(c);
  }
  void logEmpty() {
    if (log) log->addClause({});
  }

  // --- clause integration ------------------------------------------------
  void checkDeclared(std::span<const Lit> lits) const {
    for (Lit l : lits) {
      if (l.var() < 1 || l.var() > numVars) {
        throw std::invalid_argument("clause uses undeclared variable " + std::to_string(l.var()) +
                                    " (declared: " + std::to_string(numVars) + ")");
      }
    }
  }

  enum class Integration { Done, Conflict, Unsat, Error };

  // Adds a permanent clause under the current assignment, backjumping as
  // needed so that the watch invariant holds. On `Conflict` the clause is
  // stored in pendingConflict and must be analyzed.
  Integration integrate(std::vector<Lit> lits, bool fromHook) {
    if (normalizeClause(lits)) {
      lastError = "injected clause is tautological";
      return fromHook ? Integration::Error : Integration::Done;
    }
    if (fromHook) {
      for (Lit l : lits) {
        if (value(l) == LBool::True) {
          lastError = "injected clause is satisfied under the current assignment";
          return Integration::Error;
        }
      }
    }
    if (lits.empty()) {
      ok = false;
      logEmpty();
      return Integration::Unsat;
    }
    // Order: true, then unassigned, then false literals by decreasing level.
    auto rank = [this](Lit l) {
      LBool v = value(l);
      if (v == LBool::True) return std::make_pair(0, -level(l.var()));
      if (v == LBool::Undef) return std::make_pair(1, 0);
      return std::make_pair(2, -level(l.var()));
    };
    std::stable_sort(lits.begin(), lits.end(), [&](Lit a, Lit b) { return rank(a) < rank(b); });

    const LBool v0 = value(lits[0]);
    if (v0 == LBool::True) {
      // Only reachable for formula clauses satisfied at level 0.
      if (lits.size() == 1) return Integration::Done;
      CRef c = allocClause(lits, false);
      permanent.push_back(c);
      attach(c);
      return Integration::Done;
    }
    if (v0 == LBool::Undef) {
      if (lits.size() == 1) {
        backtrack(0);
        enqueue(lits[0], kNoRef);
        return Integration::Done;
      }
      CRef c = allocClause(lits, false);
      permanent.push_back(c);
      if (value(lits[1]) == LBool::Undef) {
        attach(c);
        return Integration::Done;
      }
      backtrack(level(lits[1].var()));
      attach(c);
      enqueue(lits[0], c);
      return Integration::Done;
    }
    // Every literal is false.
    const int maxLevel = level(lits[0].var());
    if (maxLevel == 0) {
      ok = false;
      logEmpty();
      return Integration::Unsat;
    }
    if (lits.size() == 1) {
      backtrack(0);
      enqueue(lits[0], kNoRef);
      return Integration::Done;
    }
    CRef c = allocClause(lits, false);
    permanent.push_back(c);
    const int second = level(lits[1].var());
    if (second < maxLevel) {
      backtrack(second);
      attach(c);
      enqueue(lits[0], c);
      return Integration::Done;
    }
    backtrack(maxLevel);
    attach(c);
    pendingConflict = c;
    return Integration::Conflict;
  }

  // --- search ------------------------------------------------------------
  SolveStatus handleConflict(CRef conflict, std::vector<Lit>& learnt) {
    ++stats.conflicts;
    ++conflictsSinceHook;
    ++conflictsSinceRestart;
    if (decisionLevel() == 0) {
      ok = false;
      logEmpty();
      return SolveStatus::Unsat;
    }
    int backtrackLevel = 0;
    analyze(conflict, learnt, backtrackLevel);
    backtrack(backtrackLevel);
    logClause(learnt);
    ++stats.learnedClauses;
    if (learnt.size() == 1) {
      enqueue(learnt[0], kNoRef);
    } else {
      CRef c = allocClause(learnt, true);
      clbd(c) = computeLbd(learnt);
      learnts.push_back(c);
      attach(c);
      bumpClause(c);
      enqueue(learnt[0], c);
    }
    decayVars();
    decayClauses();
    return SolveStatus::Sat;  // meaning: continue
  }

  bool restartDue() const {
    if (!options.restarts) return false;
    return static_cast<double>(conflictsSinceRestart) >= luby(2.0, restartIndex) * options.lubyUnit;
  }

  SolveStatus search() {
    std::vector<Lit> learnt;
    for (;;) {
      CRef conflict = kNoRef;
      if (pendingConflict != kNoRef) {
        conflict = pendingConflict;
        pendingConflict = kNoRef;
      } else {
        conflict = propagate();
      }
      if (conflict != kNoRef) {
        if (handleConflict(conflict, learnt) == SolveStatus::Unsat) return SolveStatus::Unsat;
        continue;
      }
      if (options.checkInvariants) {
        std::string violation = verifyWatches();
        if (!violation.empty()) {
          lastError = violation;
          return SolveStatus::InternalError;
        }
      }
      if (restartDue() && decisionLevel() > 0) {
        ++stats.restarts;
        ++restartIndex;
        conflictsSinceRestart = 0;
        backtrack(0);
        continue;
      }
      if (stats.conflicts >= nextReduce) {
        ++reduceRound;
        nextReduce = stats.conflicts + 2000 + reduceIncrement * reduceRound;
        reduceLearnts();
      }

      // Assumptions are decided before anything else, so neither the hook
      // nor a model can see an assignment that contradicts them.
      Lit next = kUndefLit;
      while (decisionLevel() < static_cast<int>(assumptions.size())) {
        const Lit a = assumptions[decisionLevel()];
        const LBool v = value(a);
        if (v == LBool::True) {
          newDecisionLevel();
        } else if (v == LBool::False) {
          return SolveStatus::Unsat;
        } else {
          next = a;
          break;
        }
      }
      if (next != kUndefLit) {
        ++stats.decisions;
        newDecisionLevel();
        enqueue(next, kNoRef);
        continue;
      }

      const bool full = static_cast<int>(trail.size()) == numVars;
      if (propagator != nullptr) {
        bool call = false;
        CheckPoint point = CheckPoint::Partial;
        if (full) {
          call = true;
          point = CheckPoint::Full;
        } else if (policy.callWhenObservedComplete && observedTotal > 0 &&
                   observedAssigned == observedTotal && !observedCheckDone) {
          call = true;
          point = CheckPoint::ObservedComplete;
          observedCheckDone = true;
        } else if (policy.observedThreshold > 0 && observedAssigned >= policy.observedThreshold) {
          call = true;
        } else if (policy.conflictInterval > 0 &&
                   conflictsSinceHook >= static_cast<uint64_t>(policy.conflictInterval)) {
          call = true;
          conflictsSinceHook = 0;
        } else if (policy.fixpointInterval > 0 &&
                   ++fixpointsSinceHook >= static_cast<uint64_t>(policy.fixpointInterval)) {
          call = true;
          fixpointsSinceHook = 0;
        }
        if (call) {
          ++stats.hookCalls;
          std::optional<Injection> injection = propagator->check(Solver::Impl::owner(*this), point);
          if (injection) {
            ++stats.injected;
            try {
              checkDeclared(injection->clause);
            } catch (const std::invalid_argument& e) {
              lastError = e.what();
              return SolveStatus::InternalError;
            }
            if (log) {
              if (!injection->note.empty()) log->comment(injection->note);
              log->addClause(injection->clause);
            }
            switch (integrate(std::move(injection->clause), true)) {
              case Integration::Unsat:
                return SolveStatus::Unsat;
              case Integration::Error:
                return SolveStatus::InternalError;
              case Integration::Conflict:
              case Integration::Done:
                break;
            }
            continue;
          }
        }
      }
      if (full) {
        modelValues = assigns;
        return SolveStatus::Sat;
      }

      if (next == kUndefLit) {
        next = pickBranch();
        if (next == kUndefLit) {
          lastError = "no branching variable although the assignment is partial";
          return SolveStatus::InternalError;
        }
      }
      ++stats.decisions;
      newDecisionLevel();
      enqueue(next, kNoRef);
    }
  }

  // Recovers the owning Solver for propagator callbacks.
  Solver* self = nullptr;
  static const Solver& owner(const Impl& impl) { return *impl.self; }

  std::string verifyWatches() const {
    auto watched = [this](CRef c, Lit l) {
      const auto& ws = watches[(~l).code()];
      return std::any_of(ws.begin(), ws.end(), [c](const Watcher& w) { return w.cref == c; });
    };
    auto check = [&](CRef c) -> std::string {
      const Lit* l = clits(c);
      const uint32_t size = csize(c);
      if (!watched(c, l[0]) || !watched(c, l[1])) return "clause at " + std::to_string(c) + " is not watched";
      bool satisfied = false;
      for (uint32_t i = 0; i < size; ++i) satisfied |= value(l[i]) == LBool::True;
      if (satisfied) return {};
      const bool f0 = value(l[0]) == LBool::False;
      const bool f1 = value(l[1]) == LBool::False;
      if (!f0 && !f1) return {};
      // Otherwise the clause must be propagating or conflicting: every
      // other literal is false too.
      for (uint32_t i = 2; i < size; ++i) {
        if (value(l[i]) != LBool::False) {
          return "clause at " + std::to_string(c) + " watches a false literal while literal " +
                 std::to_string(l[i].toDimacs()) + " is open";
        }
      }
      return {};
    };
    for (CRef c : permanent) {
      if (auto s = check(c); !s.empty()) return s;
    }
    for (CRef c : learnts) {
      if (auto s = check(c); !s.empty()) return s;
    }
    return {};
  }
};

Solver::Solver(int variableCount, SolverOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->self = this;
  impl_->options = options;
  impl_->growTo(variableCount);
}

Solver::~Solver() = default;

Solver::Solver(Solver&& other) noexcept : impl_(std::move(other.impl_)) {
  if (impl_) impl_->self = this;
}

Solver& Solver::operator=(Solver&& other) noexcept {
  impl_ = std::move(other.impl_);
  if (impl_) impl_->self = this;
  return *this;
}

int Solver::newVar() {
  impl_->growTo(impl_->numVars + 1);
  return impl_->numVars;
}

void Solver::reserveVars(int count) { impl_->growTo(count); }

int Solver::variableCount() const { return impl_->numVars; }

void Solver::addClause(std::span<const Lit> clause) {
  impl_->checkDeclared(clause);
  if (!impl_->ok) return;
  impl_->backtrack(0);
  impl_->integrate(std::vector<Lit>(clause.begin(), clause.end()), false);
}

void Solver::addLemma(std::span<const Lit> clause, const std::string& note) {
  impl_->checkDeclared(clause);
  if (impl_->log) {
    if (!note.empty()) impl_->log->comment(note);
    impl_->log->addClause(Clause(clause.begin(), clause.end()));
  }
  if (!impl_->ok) return;
  impl_->backtrack(0);
  impl_->integrate(std::vector<Lit>(clause.begin(), clause.end()), false);
}

void Solver::addFormula(const Formula& formula) {
  reserveVars(formula.variableCount);
  for (const Clause& c : formula.clauses) addClause(c);
}

void Solver::setPropagator(Propagator* propagator, HookPolicy policy) {
  impl_->propagator = propagator;
  impl_->policy = policy;
  impl_->observedCheckDone = false;
  impl_->recountObserved();
}

void Solver::setClauseLog(ClauseLog* log) { impl_->log = log; }

SolveStatus Solver::solve(std::span<const Lit> assumptions) {
  Impl& s = *impl_;
  s.checkDeclared(assumptions);
  s.lastError.clear();
  if (!s.ok) return SolveStatus::Unsat;
  s.assumptions.assign(assumptions.begin(), assumptions.end());
  s.backtrack(0);
  s.conflictsSinceRestart = 0;
  SolveStatus status = s.search();
  s.backtrack(0);
  s.pendingConflict = kNoRef;
  return status;
}

LBool Solver::value(int var) const { return impl_->assigns[var]; }
LBool Solver::value(Lit lit) const { return impl_->value(lit); }
int Solver::decisionLevel() const { return impl_->decisionLevel(); }
int Solver::assignedObserved() const { return impl_->observedAssigned; }

bool Solver::modelValue(int var) const { return impl_->modelValues.at(var) == LBool::True; }
bool Solver::modelValue(Lit lit) const { return modelValue(lit.var()) != lit.isNegative(); }
const std::vector<LBool>& Solver::model() const { return impl_->modelValues; }

std::size_t Solver::permanentClauseCount() const { return impl_->permanent.size(); }
const SolverStats& Solver::stats() const { return impl_->stats; }
std::string Solver::lastError() const { return impl_->lastError; }
std::string Solver::verifyWatches() const { return impl_->verifyWatches(); }

SolveStatus solveFormula(const Formula& formula, std::vector<LBool>* model, SolverOptions options) {
  Solver solver(formula.variableCount, options);
  solver.addFormula(formula);
  SolveStatus status = solver.solve();
  if (status == SolveStatus::Sat && model != nullptr) *model = solver.model();
  return status;
}

}  // namespace smsccl::sat
