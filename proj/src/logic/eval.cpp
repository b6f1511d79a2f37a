#include <algorithm>
#include <numeric>
#include <set>

#include "pcsl/logic.hpp"

namespace pcsl::logic {

const char* role_name(AssignmentRole r) {
  switch (r) {
    case AssignmentRole::kNone: return "none";
    case AssignmentRole::kWitness: return "witness";
    case AssignmentRole::kCounterexample: return "counterexample";
  }
  return "?";
}

namespace {

void free_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::kVar) out.insert(t.name);
  for (const auto& a : t.args) free_vars(a, out);
}

void free_vars(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms) free_vars(t, out);
  if (f.is_quantifier()) {
    std::set<std::string> inner;
    free_vars(f.subs[0], inner);
    inner.erase(f.var);
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const auto& s : f.subs) free_vars(s, out);
}

void flatten_conj(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::kAnd) {
    flatten_conj(f.subs[0], out);
    flatten_conj(f.subs[1], out);
  } else {
    out.push_back(&f);
  }
}

struct CTerm {
  Term::Kind kind;
  int slot = -1;
  int a = -1, b = -1;
};

struct CForm {
  Formula::Kind kind = Formula::Kind::kEq;
  int t0 = -1, t1 = -1;
  int s0 = -1, s1 = -1;
  int slot = -1;
  Sort sort = Sort::kAll;
  std::vector<int> hoisted;  // premise conjuncts checked right after binding
  bool in_block = false;     // part of the leading block
  bool recorder = false;     // last quantifier of the leading block
};

class Machine {
public:
  Machine(const FinPSL& p, Strategy strategy) : p_(p), strategy_(strategy) {
    all_.resize(p.size());
    std::iota(all_.begin(), all_.end(), Elem{0});
  }

  int declare(const std::string& name) {
    const int slot = static_cast<int>(slot_names_.size());
    slot_names_.push_back(name);
    scope_.emplace_back(name, slot);
    return slot;
  }
  void pop_scope(std::size_t k = 1) { scope_.resize(scope_.size() - k); }

  int compile(const Formula& f) {
    if (f.is_quantifier()) return compile_chain(f);
    CForm c;
    c.kind = f.kind;
    if (!f.terms.empty()) c.t0 = compile_term(f.terms[0]);
    if (f.terms.size() > 1) c.t1 = compile_term(f.terms[1]);
    if (!f.subs.empty()) c.s0 = compile(f.subs[0]);
    if (f.subs.size() > 1) c.s1 = compile(f.subs[1]);
    return push(c);
  }

  // Marks the leading block of same-kind quantifiers of `root` for recording.
  int compile_root(const Formula& root) {
    const int r = compile(root);
    if (root.is_quantifier()) {
      // block length is syntactic; hoisting may splice later quantifiers in
      std::size_t len = 1;
      for (const Formula* f = &root.subs[0]; f->kind == root.kind; f = &f->subs[0]) ++len;
      int i = r;
      for (std::size_t k = 0; k < len; ++k) {
        if (k) i = forms_[i].s0;
        block_slots_.push_back(forms_[i].slot);
        forms_[i].in_block = true;
      }
      forms_[i].recorder = true;
      root_kind_ = root.kind;
    }
    return r;
  }

  bool run(int i) { return eval(i); }

  std::vector<Elem>& env() { return env_; }
  void size_env() { env_.assign(slot_names_.size(), 0); }

  EvalResult result(bool value) const {
    EvalResult r;
    r.value = value;
    if (!recorded_) return r;
    if (root_kind_ == Formula::Kind::kForall && !value) r.role = AssignmentRole::kCounterexample;
    else if (root_kind_ == Formula::Kind::kExists && value) r.role = AssignmentRole::kWitness;
    else return r;
    for (std::size_t k = 0; k < block_slots_.size(); ++k)
      r.assignment.push_back({slot_names_[block_slots_[k]], record_[k]});
    return r;
  }

private:
  int push(const CForm& c) {
    forms_.push_back(c);
    return static_cast<int>(forms_.size()) - 1;
  }

  int compile_term(const Term& t) {
    CTerm c{t.kind};
    if (t.kind == Term::Kind::kVar) {
      auto it = std::find_if(scope_.rbegin(), scope_.rend(), [&](const auto& e) { return e.first == t.name; });
      if (it == scope_.rend()) throw SyntaxError(t.pos, "unbound variable '" + t.name + "'");
      c.slot = it->second;
    }
    if (!t.args.empty()) c.a = compile_term(t.args[0]);
    if (t.args.size() > 1) c.b = compile_term(t.args[1]);
    terms_.push_back(c);
    return static_cast<int>(terms_.size()) - 1;
  }

  int compile_chain(const Formula& head) {
    std::vector<const Formula*> chain;
    const Formula* m = &head;
    while (m->is_quantifier()) {
      chain.push_back(m);
      m = &m->subs[0];
    }
    std::vector<int> idx;
    for (const Formula* q : chain) {
      CForm c;
      c.kind = q->kind;
      c.sort = q->sort;
      c.slot = declare(q->var);
      idx.push_back(push(c));
    }

    int body = -1;
    if (strategy_ == Strategy::kShortCircuit && m->kind == Formula::Kind::kImplies) {
      std::vector<const Formula*> conj;
      flatten_conj(m->subs[0], conj);
      for (const Formula* c : conj) {
        std::set<std::string> vars;
        free_vars(*c, vars);
        int at = 0;
        for (const auto& v : vars)
          for (int k = static_cast<int>(chain.size()) - 1; k >= 0; --k)
            if (chain[static_cast<std::size_t>(k)]->var == v) {
              at = std::max(at, k);
              break;
            }
        const int compiled = compile(*c);
        forms_[idx[static_cast<std::size_t>(at)]].hoisted.push_back(compiled);
      }
      body = compile(m->subs[1]);
    } else {
      body = compile(*m);
    }
    for (std::size_t k = 0; k < idx.size(); ++k)
      forms_[idx[k]].s0 = k + 1 < idx.size() ? idx[k + 1] : body;
    pop_scope(chain.size());
    return idx.front();
  }

  Elem term(int i) {
    const CTerm& t = terms_[static_cast<std::size_t>(i)];
    switch (t.kind) {
      case Term::Kind::kVar: return env_[static_cast<std::size_t>(t.slot)];
      case Term::Kind::kZero: return p_.zero();
      case Term::Kind::kOne: return p_.one();
      case Term::Kind::kMeet: return p_.meet(term(t.a), term(t.b));
      case Term::Kind::kStar: return p_.star(term(t.a));
      case Term::Kind::kSkJoin: return p_.star(p_.meet(p_.star(term(t.a)), p_.star(term(t.b))));
    }
    return 0;
  }

  const std::vector<Elem>& domain(Sort s) const {
    switch (s) {
      case Sort::kSk: return p_.skeleton_list();
      case Sort::kD: return p_.dense_list();
      case Sort::kAll: break;
    }
    return all_;
  }

  void record(const CForm& c) {
    if (!c.recorder || recorded_) return;
    recorded_ = true;
    record_.clear();
    for (int s : block_slots_) record_.push_back(env_[static_cast<std::size_t>(s)]);
  }

  // An existential guard failed above the recorder: the rest of the block is
  // satisfied by anything, so take the first element of each remaining sort,
  // as a full sweep would.
  void record_vacuous(const CForm& c) {
    if (!c.in_block || recorded_) return;
    const CForm* q = &c;
    while (!q->recorder) {
      q = &forms_[static_cast<std::size_t>(q->s0)];
      env_[static_cast<std::size_t>(q->slot)] = domain(q->sort).front();
    }
    record(*q);
  }

  bool guards_hold(const CForm& c) {
    for (int g : c.hoisted)
      if (!eval(g)) return false;
    return true;
  }

  bool eval(int i) {
    const CForm& c = forms_[static_cast<std::size_t>(i)];
    const bool full = strategy_ == Strategy::kFullSweep;
    switch (c.kind) {
      case Formula::Kind::kEq: return term(c.t0) == term(c.t1);
      case Formula::Kind::kLeq: return p_.leq(term(c.t0), term(c.t1));
      case Formula::Kind::kLt: return p_.lt(term(c.t0), term(c.t1));
      case Formula::Kind::kParallel: return p_.parallel(term(c.t0), term(c.t1));
      case Formula::Kind::kIsSk: return p_.is_skeletal(term(c.t0));
      case Formula::Kind::kIsD: return p_.is_dense(term(c.t0));
      case Formula::Kind::kIsCentral: return p_.is_central(term(c.t0));
      case Formula::Kind::kNot: return !eval(c.s0);
      case Formula::Kind::kAnd:
        if (full) {
          const bool a = eval(c.s0), b = eval(c.s1);
          return a && b;
        }
        return eval(c.s0) && eval(c.s1);
      case Formula::Kind::kOr:
        if (full) {
          const bool a = eval(c.s0), b = eval(c.s1);
          return a || b;
        }
        return eval(c.s0) || eval(c.s1);
      case Formula::Kind::kImplies:
        if (full) {
          const bool a = eval(c.s0), b = eval(c.s1);
          return !a || b;
        }
        return !eval(c.s0) || eval(c.s1);
      case Formula::Kind::kForall: {
        bool verdict = true;
        for (Elem v : domain(c.sort)) {
          env_[static_cast<std::size_t>(c.slot)] = v;
          // a failed guard makes the rest vacuously true; sorts are never empty
          if (!guards_hold(c)) continue;
          if (!eval(c.s0)) {
            record(c);
            verdict = false;
            if (!full) return false;
          }
        }
        return verdict;
      }
      case Formula::Kind::kExists: {
        bool verdict = false;
        for (Elem v : domain(c.sort)) {
          env_[static_cast<std::size_t>(c.slot)] = v;
          const bool vacuous = !guards_hold(c);
          if (vacuous || eval(c.s0)) {
            if (vacuous) record_vacuous(c);
            else record(c);
            verdict = true;
            if (!full) return true;
          }
        }
        return verdict;
      }
    }
    return false;
  }

  const FinPSL& p_;
  Strategy strategy_;
  std::vector<Elem> all_;
  std::vector<CTerm> terms_;
  std::vector<CForm> forms_;
  std::vector<std::pair<std::string, int>> scope_;
  std::vector<std::string> slot_names_;
  std::vector<Elem> env_;
  std::vector<int> block_slots_;
  Formula::Kind root_kind_ = Formula::Kind::kEq;
  bool recorded_ = false;
  std::vector<Elem> record_;
};

}  // namespace

EvalResult eval(const FinPSL& p, const Formula& closed, const EvalOptions& opts) {
  Machine m(p, opts.strategy);
  const int root = m.compile_root(closed);
  m.size_env();
  return m.result(m.run(root));
}

EvalResult eval(const FinPSL& p, const Sentence& s, const EvalOptions& opts) {
  return eval(p, s.closed(), opts);
}

InstanceResult eval_instance(const FinPSL& p, const Sentence& s, const std::vector<Elem>& values,
                             const EvalOptions& opts) {
  if (values.size() != s.params.size())
    throw std::invalid_argument("eval_instance: expected " + std::to_string(s.params.size()) +
                                " parameter values");
  Machine m(p, opts.strategy);
  for (const auto& b : s.params) m.declare(b.var);
  const int guard = s.has_guard ? m.compile(s.guard) : -1;
  const int matrix = m.compile(s.matrix);
  m.size_env();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= p.size()) throw std::invalid_argument("eval_instance: value out of range");
    m.env()[k] = values[k];
  }
  InstanceResult r;
  r.guard = guard < 0 || m.run(guard);
  r.matrix = m.run(matrix);
  return r;
}

}  // namespace pcsl::logic
