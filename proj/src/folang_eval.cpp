#include <algorithm>

#include "chevlab/folang.hpp"

namespace chevlab {

Relation Relation::unary(std::vector<bool> mask) {
  Relation r;
  r.arity = 1;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) r.tuples.push_back({i});
  r.mask = std::move(mask);
  return r;
}

Relation Relation::from_tuples(int arity, std::vector<std::vector<std::size_t>> tuples) {
  if (arity < 1) throw RingError("relation arity must be positive");
  for (const auto& t : tuples)
    if (t.size() != static_cast<std::size_t>(arity)) throw RingError("relation tuple has the wrong arity");
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  Relation r;
  r.arity = arity;
  r.tuples = std::move(tuples);
  return r;
}

bool Relation::contains(const std::size_t* args) const {
  if (arity == 1 && !mask.empty()) return args[0] < mask.size() && mask[args[0]];
  std::vector<std::size_t> key(args, args + arity);
  return std::binary_search(tuples.begin(), tuples.end(), key);
}

std::size_t Relation::size() const { return tuples.size(); }

void Structure::add_constant(const std::string& name, std::size_t x) {
  if (x >= group->order()) throw RingError("constant " + name + " is not a group element");
  constants[name] = x;
}

void Structure::add_predicate(const std::string& name, Relation r) {
  for (const auto& t : r.tuples)
    for (std::size_t x : t)
      if (x >= group->order()) throw RingError("predicate " + name + " mentions a non-element");
  if (r.arity == 1 && r.mask.empty()) {
    r.mask.assign(group->order(), false);
    for (const auto& t : r.tuples) r.mask[t[0]] = true;
  }
  predicates[name] = std::move(r);
}

struct Evaluator::Impl {
  struct CTerm {
    Term::Kind kind = Term::Kind::Identity;
    bool is_var = false;
    std::size_t value = 0;
    long exponent = 0;
    int a = -1, b = -1;
  };
  struct CNode {
    Formula::Kind kind = Formula::Kind::Eq;
    const Relation* rel = nullptr;
    std::vector<int> terms, subs;
    std::size_t slot = 0;
    std::vector<std::size_t> free;  // sorted slots
    bool memo = false;
    std::vector<char> table;
  };

  const Group* g = nullptr;
  std::size_t n = 0;
  std::size_t free_count = 0;
  std::size_t slots = 0;
  std::vector<CTerm> terms;
  std::vector<CNode> nodes;
  int root = -1;
  std::vector<std::vector<std::size_t>> term_free;

  int compile_term(const Structure& s, const Term& t, const std::vector<std::pair<std::string, std::size_t>>& scope,
                   std::vector<std::size_t>& free) {
    CTerm c;
    c.kind = t.kind;
    if (t.kind == Term::Kind::Name) {
      auto it = std::find_if(scope.rbegin(), scope.rend(), [&](const auto& p) { return p.first == t.name; });
      if (it != scope.rend()) {
        c.is_var = true;
        c.value = it->second;
        free.push_back(it->second);
      } else {
        auto k = s.constants.find(t.name);
        if (k == s.constants.end()) throw RingError("unknown name '" + t.name + "'");
        c.value = k->second;
      }
    }
    c.exponent = t.exponent;
    if (!t.args.empty()) c.a = compile_term(s, t.args[0], scope, free);
    if (t.args.size() > 1) c.b = compile_term(s, t.args[1], scope, free);
    terms.push_back(c);
    return static_cast<int>(terms.size()) - 1;
  }

  int compile(const Structure& s, const Formula& f, std::vector<std::pair<std::string, std::size_t>>& scope) {
    CNode c;
    c.kind = f.kind;
    std::vector<std::size_t> free;
    if (f.kind == Formula::Kind::Pred) {
      auto it = s.predicates.find(f.name);
      if (it == s.predicates.end()) throw RingError("unknown predicate '" + f.name + "'");
      if (static_cast<std::size_t>(it->second.arity) != f.terms.size())
        throw RingError("predicate '" + f.name + "' has arity " + std::to_string(it->second.arity));
      c.rel = &it->second;
    }
    for (const auto& t : f.terms) c.terms.push_back(compile_term(s, t, scope, free));
    if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
      c.slot = slots++;
      scope.emplace_back(f.name, c.slot);
      int sub = compile(s, f.subs[0], scope);
      scope.pop_back();
      c.subs.push_back(sub);
      for (std::size_t v : nodes[sub].free)
        if (v != c.slot) free.push_back(v);
    } else {
      for (const auto& sf : f.subs) {
        int sub = compile(s, sf, scope);
        c.subs.push_back(sub);
        free.insert(free.end(), nodes[sub].free.begin(), nodes[sub].free.end());
      }
    }
    std::sort(free.begin(), free.end());
    free.erase(std::unique(free.begin(), free.end()), free.end());
    c.free = std::move(free);
    nodes.push_back(std::move(c));
    return static_cast<int>(nodes.size()) - 1;
  }

  std::size_t term_value(int i, const std::vector<std::size_t>& env) const {
    const CTerm& t = terms[i];
    switch (t.kind) {
      case Term::Kind::Name: return t.is_var ? env[t.value] : t.value;
      case Term::Kind::Identity: return 0;
      case Term::Kind::Mul: return g->mul(term_value(t.a, env), term_value(t.b, env));
      case Term::Kind::Inv: return g->inv(term_value(t.a, env));
      case Term::Kind::Pow: return g->pow(term_value(t.a, env), t.exponent);
      case Term::Kind::Comm: return g->comm(term_value(t.a, env), term_value(t.b, env));
    }
    return 0;
  }

  std::size_t table_index(const CNode& c, const std::vector<std::size_t>& env) const {
    std::size_t idx = 0;
    for (std::size_t k = c.free.size(); k-- > 0;) idx = idx * n + env[c.free[k]];
    return idx;
  }

  bool value(int i, std::vector<std::size_t>& env, bool memo) const {
    const CNode& c = nodes[i];
    if (memo && c.memo) return c.table[table_index(c, env)];
    return compute(i, env, memo);
  }

  bool compute(int i, std::vector<std::size_t>& env, bool memo) const {
    const CNode& c = nodes[i];
    switch (c.kind) {
      case Formula::Kind::Eq: return term_value(c.terms[0], env) == term_value(c.terms[1], env);
      case Formula::Kind::Pred: {
        std::vector<std::size_t> args;
        for (int t : c.terms) args.push_back(term_value(t, env));
        return c.rel->contains(args.data());
      }
      case Formula::Kind::Not: return !value(c.subs[0], env, memo);
      case Formula::Kind::And: return value(c.subs[0], env, memo) && value(c.subs[1], env, memo);
      case Formula::Kind::Or: return value(c.subs[0], env, memo) || value(c.subs[1], env, memo);
      case Formula::Kind::Implies: return !value(c.subs[0], env, memo) || value(c.subs[1], env, memo);
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const bool want = c.kind == Formula::Kind::Exists;
        const std::size_t saved = env[c.slot];
        bool result = !want;
        for (std::size_t x = 0; x < n; ++x) {
          env[c.slot] = x;
          if (value(c.subs[0], env, memo) == want) {
            result = want;
            break;
          }
        }
        env[c.slot] = saved;
        return result;
      }
    }
    return false;
  }

  void build_tables(std::size_t budget) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CNode& c = nodes[i];
      std::size_t size = 1;
      bool fits = true;
      for (std::size_t k = 0; k < c.free.size() && fits; ++k) {
        if (size > budget / std::max<std::size_t>(n, 1)) fits = false;
        size *= n;
      }
      if (!fits || size > budget) continue;
      std::vector<char> table(size);
      const long long total = static_cast<long long>(size);
#pragma omp parallel
      {
        std::vector<std::size_t> env(slots, 0);
#pragma omp for schedule(static)
        for (long long idx = 0; idx < total; ++idx) {
          std::size_t rest = static_cast<std::size_t>(idx);
          for (std::size_t v : c.free) {
            env[v] = rest % n;
            rest /= n;
          }
          table[idx] = compute(static_cast<int>(i), env, true);
        }
      }
      c.table = std::move(table);
      c.memo = true;
    }
  }

  std::vector<std::vector<std::size_t>> enumerate(std::size_t cap, bool memo) const {
    std::vector<std::vector<std::size_t>> out;
    if (free_count == 0) {
      std::vector<std::size_t> env(slots, 0);
      if (value(root, env, memo)) out.push_back({});
      return out;
    }
    std::size_t rest = 1;
    for (std::size_t k = 1; k < free_count; ++k) rest *= n;
    std::vector<std::vector<std::vector<std::size_t>>> per_first(n);
    bool overflow = false;
#pragma omp parallel for schedule(dynamic) if (memo)
    for (std::size_t v0 = 0; v0 < n; ++v0) {
      std::vector<std::size_t> env(slots, 0);
      env[0] = v0;
      for (std::size_t r = 0; r < rest && !overflow; ++r) {
        std::size_t x = r;
        for (std::size_t k = free_count; k-- > 1;) {
          env[k] = x % n;
          x /= n;
        }
        if (value(root, env, memo)) {
          per_first[v0].emplace_back(env.begin(), env.begin() + free_count);
          if (per_first[v0].size() > cap) overflow = true;
        }
      }
    }
    for (auto& p : per_first)
      for (auto& t : p) {
        out.push_back(std::move(t));
        if (out.size() > cap) throw BudgetExceeded("solution set exceeds cap", out.size());
      }
    if (overflow) throw BudgetExceeded("solution set exceeds cap", cap);
    return out;
  }
};

Evaluator::Evaluator(const Structure& s, const Formula& f, std::vector<std::string> free_vars,
                     std::size_t memo_budget)
    : impl_(std::make_unique<Impl>()) {
  impl_->g = s.group.get();
  impl_->n = s.group->order();
  impl_->free_count = free_vars.size();
  std::vector<std::pair<std::string, std::size_t>> scope;
  for (std::size_t i = 0; i < free_vars.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (free_vars[j] == free_vars[i]) throw RingError("duplicate free variable '" + free_vars[i] + "'");
    scope.emplace_back(free_vars[i], i);
  }
  impl_->slots = free_vars.size();
  impl_->root = impl_->compile(s, f, scope);
  impl_->build_tables(memo_budget);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

bool Evaluator::eval(const std::vector<std::size_t>& assignment) const {
  if (assignment.size() != impl_->free_count) throw RingError("assignment has the wrong arity");
  std::vector<std::size_t> env(impl_->slots, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= impl_->n) throw RingError("assignment value is not a group element");
    env[i] = assignment[i];
  }
  return impl_->value(impl_->root, env, true);
}

bool Evaluator::eval_reference(const std::vector<std::size_t>& assignment) const {
  if (assignment.size() != impl_->free_count) throw RingError("assignment has the wrong arity");
  std::vector<std::size_t> env(impl_->slots, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) env[i] = assignment[i];
  return impl_->value(impl_->root, env, false);
}

std::vector<std::vector<std::size_t>> Evaluator::solutions(std::size_t cap) const {
  return impl_->enumerate(cap, true);
}

std::vector<std::vector<std::size_t>> Evaluator::solutions_reference(std::size_t cap) const {
  return impl_->enumerate(cap, false);
}

std::size_t Evaluator::memoized_nodes() const {
  return static_cast<std::size_t>(std::count_if(impl_->nodes.begin(), impl_->nodes.end(),
                                                [](const Impl::CNode& c) { return c.memo; }));
}

namespace {

std::pair<std::vector<std::string>, std::vector<std::size_t>> split(
    const std::map<std::string, std::size_t>& assignment) {
  std::vector<std::string> names;
  std::vector<std::size_t> values;
  for (const auto& [k, v] : assignment) {
    names.push_back(k);
    values.push_back(v);
  }
  return {names, values};
}

}  // namespace

bool eval(const Structure& s, const Formula& f, const std::map<std::string, std::size_t>& assignment) {
  auto [names, values] = split(assignment);
  return Evaluator(s, f, names).eval(values);
}

std::size_t eval_term(const Structure& s, const Term& t, const std::map<std::string, std::size_t>& assignment) {
  Evaluator::Impl impl;
  impl.g = s.group.get();
  impl.n = s.group->order();
  std::vector<std::pair<std::string, std::size_t>> scope;
  std::vector<std::size_t> env;
  for (const auto& [k, v] : assignment) {
    if (v >= impl.n) throw RingError("assignment value is not a group element");
    scope.emplace_back(k, env.size());
    env.push_back(v);
  }
  std::vector<std::size_t> free;
  int root = impl.compile_term(s, t, scope, free);
  return impl.term_value(root, env);
}

std::vector<std::vector<std::size_t>> solution_set(const Structure& s, const Formula& f,
                                                   const std::vector<std::string>& vars) {
  for (const auto& name : free_names(f))
    if (std::find(vars.begin(), vars.end(), name) == vars.end() && !s.constants.count(name))
      throw RingError("free variable '" + name + "' is not listed");
  return Evaluator(s, f, vars).solutions();
}

}  // namespace chevlab
