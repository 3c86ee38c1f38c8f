#include "sympar/symexec.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "sympar/error.hpp"

namespace sympar {

namespace {

struct SymState {
  std::vector<const Stmt*> cont;  // continuation, top at the back
  std::map<std::string, TermPtr> store;
  int k = 0;      // next sampling index
  int depth = 0;  // branch nodes consumed on this path
  std::uint64_t fuel = 0;
  std::vector<FormulaPtr> phi;  // path condition conjuncts
};

void push_block(std::vector<const Stmt*>& cont,
                const std::vector<StmtPtr>& block) {
  for (auto it = block.rbegin(); it != block.rend(); ++it)
    cont.push_back(it->get());
}

class Executor {
 public:
  Executor(const Program& p, std::size_t action, const SymexecOptions& opt)
      : opt_(opt) {
    result_.action = action;
    SymState init;
    init.fuel = opt.fuel;
    for (const auto& sv : p.states) init.store[sv.name] = t_var(sv.name);
    for (const auto& [name, value] : p.params) init.store[name] = t_const(value);
    for (std::size_t i = 0; i < p.action_components.size(); ++i)
      init.store[p.action_components[i]] =
          t_const(p.actions[action].values[i]);
    push_block(init.cont, p.body);
    stack_.push_back(std::move(init));
  }

  PathConditionSet run() {
    while (!stack_.empty()) {
      SymState st = std::move(stack_.back());
      stack_.pop_back();
      step_to_end(std::move(st));
    }
    return std::move(result_);
  }

 private:
  const SymexecOptions& opt_;
  PathConditionSet result_;
  std::vector<SymState> stack_;
  std::set<std::size_t> seen_hashes_;  // cheap pre-filter for dedup
  std::vector<FormulaPtr> recorded_;   // for exact structural dedup

  void record(const std::vector<FormulaPtr>& phi) {
    std::vector<FormulaPtr> conj(phi.begin(), phi.end());
    FormulaPtr pc = normalize(f_and(std::move(conj)));
    std::size_t h = formula_hash(pc);
    if (seen_hashes_.count(h)) {
      for (const auto& prev : recorded_)
        if (formula_equal(prev, pc)) return;
    }
    seen_hashes_.insert(h);
    recorded_.push_back(pc);
    result_.pcs.push_back(pc);
  }

  // True if the successor should be explored (pruning off or satisfiable).
  bool keep_branch(const std::vector<FormulaPtr>& phi) {
    if (!opt_.prune_infeasible) return true;
    std::vector<FormulaPtr> conj(phi.begin(), phi.end());
    return check_sat(f_and(std::move(conj)), opt_.solver).status !=
           SatStatus::Unsat;
  }

  // Splits st on guard g (already substituted, non-constant).  True branch
  // continues in st with true_block prepended; the false successor gets
  // false_block and goes on the stack, so DFS explores the true side first.
  // Returns false if the path was truncated by the depth bound instead.
  bool branch(SymState& st, const FormulaPtr& g,
              const std::vector<StmtPtr>* true_block,
              const std::vector<const Stmt*>& true_extra,
              const std::vector<StmtPtr>* false_block) {
    if (st.depth == opt_.depth_k) {
      result_.complete = false;
      record(st.phi);
      return false;
    }
    SymState fs = st;
    fs.depth++;
    fs.phi.push_back(f_not(g));
    if (false_block) push_block(fs.cont, *false_block);
    if (keep_branch(fs.phi)) stack_.push_back(std::move(fs));

    st.depth++;
    st.phi.push_back(g);
    for (auto it = true_extra.rbegin(); it != true_extra.rend(); ++it)
      st.cont.push_back(*it);
    if (true_block) push_block(st.cont, *true_block);
    return keep_branch(st.phi);
  }

  void step_to_end(SymState st) {
    while (!st.cont.empty()) {
      const Stmt* s = st.cont.back();
      st.cont.pop_back();
      switch (s->kind) {
        case Stmt::Kind::Skip:
          break;
        case Stmt::Kind::Assign:
          st.store[s->var] = subst_term(s->expr, st.store);
          break;
        case Stmt::Kind::Sample: {
          TermPtr y = t_var(sample_var_name(st.k++));
          st.phi.push_back(f_cmp(y, CmpOp::Ge, t_const(0)));
          st.phi.push_back(f_cmp(y, CmpOp::Le, t_const(1)));
          if (s->dist == DistKind::Uniform) {
            st.store[s->var] =
                t_add(t_const(s->dist_a),
                      t_mul(t_const(s->dist_b - s->dist_a), y));
          } else {
            // bernoulli(p): outcome decided by y < p, a real branch.
            FormulaPtr g = f_cmp(y, CmpOp::Lt, t_const(s->dist_a));
            SymState fs = st;  // before mutating st for the true side
            if (st.depth == opt_.depth_k) {
              result_.complete = false;
              record(st.phi);
              return;
            }
            fs.depth++;
            fs.phi.push_back(f_not(g));
            fs.store[s->var] = t_const(0);
            if (keep_branch(fs.phi)) stack_.push_back(std::move(fs));
            st.depth++;
            st.phi.push_back(g);
            st.store[s->var] = t_const(1);
            if (!keep_branch(st.phi)) return;
          }
          break;
        }
        case Stmt::Kind::If: {
          FormulaPtr g = normalize(formula_subst(s->guard, st.store));
          if (g->kind == Formula::Kind::True) {
            push_block(st.cont, s->body);
            break;
          }
          if (g->kind == Formula::Kind::False) {
            push_block(st.cont, s->else_body);
            break;
          }
          if (!branch(st, g, &s->body, {}, &s->else_body)) return;
          break;
        }
        case Stmt::Kind::While: {
          FormulaPtr g = normalize(formula_subst(s->guard, st.store));
          if (g->kind == Formula::Kind::True) {
            if (st.fuel == 0)
              throw EvalError("loop fuel exhausted at line " +
                              std::to_string(s->line));
            --st.fuel;
            st.cont.push_back(s);  // loop again after the body
            push_block(st.cont, s->body);
            break;
          }
          if (g->kind == Formula::Kind::False) break;
          if (!branch(st, g, &s->body, {s}, nullptr)) return;
          break;
        }
      }
    }
    record(st.phi);
  }
};

}  // namespace

PathConditionSet sym_execute(const Program& p, std::size_t action,
                             const SymexecOptions& opt) {
  if (action >= p.actions.size())
    throw InvariantViolation("action index out of range");
  if (opt.depth_k < 1) throw InvariantViolation("depth bound must be >= 1");
  Executor ex(p, action, opt);
  return ex.run();
}

// ---------------------------------------------------------------------------

namespace {

// Sampling variables of f, ordered by their numeric suffix.
std::vector<std::string> sample_vars_of(const FormulaPtr& f) {
  std::set<std::string> vs;
  formula_vars(f, vs);
  std::vector<std::pair<int, std::string>> ys;
  for (const auto& v : vs)
    if (is_sample_var_name(v)) ys.emplace_back(std::stoi(v.substr(1)), v);
  std::sort(ys.begin(), ys.end());
  std::vector<std::string> out;
  out.reserve(ys.size());
  for (auto& [idx, name] : ys) out.push_back(std::move(name));
  return out;
}

bool contains_structurally(const std::vector<FormulaPtr>& v,
                           const FormulaPtr& f) {
  for (const auto& g : v)
    if (formula_equal(g, f)) return true;
  return false;
}

}  // namespace

std::vector<FormulaPtr> project_and_disjointify(
    const std::vector<FormulaPtr>& pcs, const SolverConfig& cfg) {
  std::vector<FormulaPtr> cur;
  for (const auto& pc : pcs) {
    std::vector<std::string> ys = sample_vars_of(pc);
    FormulaPtr g = ys.empty() ? normalize(pc) : eliminate(pc, ys, cfg);
    if (g->kind == Formula::Kind::False) continue;
    if (check_sat(g, cfg).status == SatStatus::Unsat) continue;
    if (!contains_structurally(cur, g)) cur.push_back(g);
  }

  // Overlap repair.  Restart the scan after every split; terminates because
  // split pieces are syntactically complementary, so re-checks refute fast.
  const int kMaxSplits = 10000;
  int splits = 0;
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (std::size_t i = 0; i < cur.size() && !dirty; ++i) {
      for (std::size_t j = i + 1; j < cur.size() && !dirty; ++j) {
        SatResult overlap = check_sat(f_and({cur[i], cur[j]}), cfg);
        if (overlap.status == SatStatus::Unsat) continue;
        if (++splits > kMaxSplits)
          throw InvariantViolation("overlap repair did not converge");
        FormulaPtr f = cur[i], g = cur[j];
        FormulaPtr fg = normalize(f_and({f, g}));
        FormulaPtr fng = normalize(f_and({f, f_not(g)}));
        FormulaPtr nfg = normalize(f_and({f_not(f), g}));
        std::vector<FormulaPtr> next;
        next.reserve(cur.size() + 1);
        for (std::size_t t = 0; t < cur.size(); ++t) {
          if (t == i) {
            for (const auto& piece : {fg, fng}) {
              if (piece->kind == Formula::Kind::False) continue;
              if (check_sat(piece, cfg).status == SatStatus::Unsat) continue;
              if (!contains_structurally(next, piece)) next.push_back(piece);
            }
          } else if (t == j) {
            if (nfg->kind != Formula::Kind::False &&
                check_sat(nfg, cfg).status != SatStatus::Unsat &&
                !contains_structurally(next, nfg))
              next.push_back(nfg);
          } else if (!contains_structurally(next, cur[t])) {
            next.push_back(cur[t]);
          }
        }
        cur = std::move(next);
        dirty = true;
      }
    }
  }
  return cur;
}

}  // namespace sympar
