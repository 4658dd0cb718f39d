#include "vplc/reach.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <unordered_map>

#include "vplc/error.hpp"

namespace vplc {

LabeledGraph labeled_graph(const Interpretation& i, const SymbolBinding& b, const PushdownAlphabet& alpha) {
  LabeledGraph g;
  g.size = i.size;
  for (const auto& a : alpha.symbols()) {
    auto& adj = g.adjacency[a];
    adj.assign(i.size, {});
    for (const auto& [x, y] : edge_relation(i, b, a)) adj[x].push_back(y);
  }
  return g;
}

std::vector<Edge> ReachResult::pairs() const {
  std::vector<Edge> out;
  for (auto d : sources)
    for (auto e : to_vector(targets[d])) out.push_back({d, e});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

enum class OriginKind { Entry, TopEmpty, TopPending };
enum class BackKind { Init, Step, Call, Jump };

struct Back {
  BackKind kind = BackKind::Init;
  int prevOrigin = -1;
  int prevNode = -1;
  int letter = -1;  // step/call letter, or jump id
};

struct PairInfo {
  long len;
  bool done;
  Back back;
};

struct Origin {
  OriginKind kind;
  int anchor;  // entry node, or source element
  std::unordered_map<int, PairInfo> pairs;
  std::vector<int> doneNodes;
};

struct Caller {
  int node;
  StackSym gamma;
  int letter;
};

struct Jump {
  int from, to;
  long len;
  int callLetter;
  int inner;  // entry origin
  int innerNode;
  int retLetter;
};

class Saturation {
 public:
  Saturation(const LabeledGraph& g, const Vpa& a, bool shortest) : g_(g), a_(a), shortest_(shortest) {
    n_ = g.size;
    letters_ = a.alphabet.symbols();
    adj_.resize(letters_.size());
    for (size_t l = 0; l < letters_.size(); ++l) {
      auto it = g.adjacency.find(letters_[l]);
      if (it == g.adjacency.end()) throw Error("graph lacks edges for symbol '" + letters_[l] + "'");
      adj_[l] = &it->second;
    }
    auto lid = [&](const Symbol& s) {
      return static_cast<int>(std::lower_bound(letters_.begin(), letters_.end(), s) - letters_.begin());
    };
    const int q = a.numStates();
    intRules_.resize(q);
    callRules_.resize(q);
    retRules_.resize(q);
    for (const auto& r : a.internals) intRules_[r.from].push_back({lid(r.letter), r.to, 0});
    for (const auto& r : a.calls) callRules_[r.from].push_back({lid(r.letter), r.to, r.push});
    for (const auto& r : a.returns) retRules_[r.from].push_back({lid(r.letter), r.to, r.pop});
    entryOf_.assign(static_cast<size_t>(q) * n_, -1);
    into_.resize(static_cast<size_t>(q) * n_);
    jumpsFrom_.resize(static_cast<size_t>(q) * n_);
  }

  ReachResult run(const std::vector<Element>& sources, bool withWitness) {
    ReachResult res;
    res.size = n_;
    res.sources = sources;
    std::sort(res.sources.begin(), res.sources.end());
    res.sources.erase(std::unique(res.sources.begin(), res.sources.end()), res.sources.end());
    res.targets.assign(n_, ElementSet(n_));
    std::vector<std::pair<int, int>> tops;  // (empty origin, pending origin) per source
    for (auto d : res.sources) {
      if (d < 0 || d >= n_) throw Error("source element out of range");
      int e = new_origin(OriginKind::TopEmpty, d);
      int p = new_origin(OriginKind::TopPending, d);
      tops.push_back({e, p});
      for (auto q0 : a_.initial) candidate(e, node(q0, d), 0, Back{});
    }
    drain();
    for (size_t k = 0; k < res.sources.size(); ++k) {
      Element d = res.sources[k];
      std::map<Element, std::pair<long, std::pair<int, int>>> best;
      for (int o : {tops[k].first, tops[k].second})
        for (int v : origins_[o].doneNodes) {
          if (!a_.final.count(v / n_)) continue;
          Element e = v % n_;
          res.targets[d].set(e);
          long len = origins_[o].pairs.at(v).len;
          auto it = best.find(e);
          if (it == best.end() || len < it->second.first) best[e] = {len, {o, v}};
        }
      if (withWitness)
        for (const auto& [e, info] : best) {
          Witness w;
          rebuild(info.second.first, info.second.second, w);
          res.witnesses[{d, e}] = std::move(w);
        }
    }
    return res;
  }

 private:
  struct Rule {
    int letter, to;
    StackSym gamma;
  };
  struct Item {
    long len;
    long seq;
    int origin, node;
    bool operator>(const Item& o) const { return len != o.len ? len > o.len : seq > o.seq; }
  };

  int node(StateId q, Element d) const { return q * n_ + d; }

  int new_origin(OriginKind k, int anchor) {
    origins_.push_back({k, anchor, {}, {}});
    return static_cast<int>(origins_.size()) - 1;
  }

  void candidate(int o, int v, long len, const Back& back) {
    auto& pairs = origins_[o].pairs;
    auto it = pairs.find(v);
    if (it == pairs.end()) {
      pairs.emplace(v, PairInfo{len, false, back});
    } else {
      if (!shortest_ || it->second.done || len >= it->second.len) return;
      it->second.len = len;
      it->second.back = back;
    }
    push({len, seq_++, o, v});
  }

  void push(const Item& it) {
    if (shortest_) heap_.push(it);
    else fifo_.push_back(it);
  }

  void drain() {
    while (true) {
      Item it;
      if (shortest_) {
        if (heap_.empty()) break;
        it = heap_.top();
        heap_.pop();
      } else {
        if (fifo_.empty()) break;
        it = fifo_.front();
        fifo_.pop_front();
      }
      auto& info = origins_[it.origin].pairs.at(it.node);
      if (info.done || info.len != it.len) continue;
      info.done = true;
      process(it.origin, it.node, it.len);
    }
  }

  int entry_for(int x) {
    if (entryOf_[x] >= 0) return entryOf_[x];
    int o = new_origin(OriginKind::Entry, x);
    entryOf_[x] = o;
    candidate(o, x, 0, Back{});
    return o;
  }

  void process(int o, int v, long len) {
    origins_[o].doneNodes.push_back(v);
    into_[v].push_back(o);
    const StateId q = v / n_;
    const Element d = v % n_;
    const OriginKind kind = origins_[o].kind;
    for (const auto& r : intRules_[q])
      for (auto e : (*adj_[r.letter])[d]) candidate(o, node(r.to, e), len + 1, {BackKind::Step, o, v, r.letter});
    for (int j : jumpsFrom_[v]) candidate(o, jumps_[j].to, len + jumps_[j].len, {BackKind::Jump, o, v, j});
    if (!registered_.count(v)) register_calls(v);
    if (kind != OriginKind::Entry) {
      int pending = kind == OriginKind::TopPending ? o : o + 1;
      for (const auto& r : callRules_[q])
        for (auto e : (*adj_[r.letter])[d])
          candidate(pending, node(r.to, e), len + 1, {BackKind::Call, o, v, r.letter});
    }
    if (kind == OriginKind::TopEmpty)
      for (const auto& r : retRules_[q])
        if (r.gamma == kBottom)
          for (auto e : (*adj_[r.letter])[d]) candidate(o, node(r.to, e), len + 1, {BackKind::Step, o, v, r.letter});
    if (kind == OriginKind::Entry) {
      std::map<std::pair<int, int>, std::pair<long, Jump>> fresh;
      for (const auto& c : callers_[o]) wrap(c, o, v, len, fresh);
      for (auto& [key, jl] : fresh) add_jump(jl.second);
    }
  }

  // Jumps caller.node -> y through the finished inner pair (entry o, v).
  void wrap(const Caller& c, int o, int v, long innerLen, std::map<std::pair<int, int>, std::pair<long, Jump>>& fresh) {
    const StateId q = v / n_;
    const Element d = v % n_;
    for (const auto& r : retRules_[q]) {
      if (r.gamma != c.gamma) continue;
      for (auto e : (*adj_[r.letter])[d]) {
        int y = node(r.to, e);
        if (jumpIndex_.count({c.node, y})) continue;
        long len = innerLen + 2;
        auto it = fresh.find({c.node, y});
        if (it == fresh.end() || len < it->second.first)
          fresh[{c.node, y}] = {len, Jump{c.node, y, len, c.letter, o, v, r.letter}};
      }
    }
  }

  void register_calls(int v) {
    registered_.insert(v);
    const StateId q = v / n_;
    const Element d = v % n_;
    std::map<std::pair<int, int>, std::pair<long, Jump>> fresh;
    for (const auto& r : callRules_[q])
      for (auto e : (*adj_[r.letter])[d]) {
        int x = node(r.to, e);
        int eo = entry_for(x);
        Caller c{v, r.gamma, r.letter};
        callers_[eo].push_back(c);
        for (int z : origins_[eo].doneNodes) wrap(c, eo, z, origins_[eo].pairs.at(z).len, fresh);
      }
    for (auto& [key, jl] : fresh) add_jump(jl.second);
  }

  void add_jump(const Jump& j) {
    if (jumpIndex_.count({j.from, j.to})) return;
    int id = static_cast<int>(jumps_.size());
    jumps_.push_back(j);
    jumpIndex_[{j.from, j.to}] = id;
    jumpsFrom_[j.from].push_back(id);
    for (int o : into_[j.from]) {
      long base = origins_[o].pairs.at(j.from).len;
      candidate(o, j.to, base + j.len, {BackKind::Jump, o, j.from, id});
    }
  }

  void rebuild(int o, int v, Witness& w) const {
    const auto& info = origins_[o].pairs.at(v);
    const Back& b = info.back;
    switch (b.kind) {
      case BackKind::Init:
        w.path.push_back(v % n_);
        return;
      case BackKind::Step:
      case BackKind::Call:
        rebuild(b.prevOrigin, b.prevNode, w);
        w.word.push_back(letters_[b.letter]);
        w.path.push_back(v % n_);
        return;
      case BackKind::Jump: {
        rebuild(b.prevOrigin, b.prevNode, w);
        const Jump& j = jumps_[b.letter];
        w.word.push_back(letters_[j.callLetter]);
        Witness inner;
        rebuild(j.inner, j.innerNode, inner);
        w.path.insert(w.path.end(), inner.path.begin(), inner.path.end());
        w.word.insert(w.word.end(), inner.word.begin(), inner.word.end());
        w.word.push_back(letters_[j.retLetter]);
        w.path.push_back(j.to % n_);
        return;
      }
    }
  }

  struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
      return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ static_cast<unsigned>(p.second));
    }
  };

  const LabeledGraph& g_;
  const Vpa& a_;
  bool shortest_;
  int n_;
  std::vector<Symbol> letters_;
  std::vector<const std::vector<std::vector<Element>>*> adj_;
  std::vector<std::vector<Rule>> intRules_, callRules_, retRules_;
  std::vector<Origin> origins_;
  std::vector<int> entryOf_;
  std::vector<std::vector<int>> into_;
  std::unordered_map<int, std::vector<Caller>> callers_;
  std::set<int> registered_;
  std::vector<Jump> jumps_;
  std::unordered_map<std::pair<int, int>, int, PairHash> jumpIndex_;
  std::vector<std::vector<int>> jumpsFrom_;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
  std::deque<Item> fifo_;
  long seq_ = 0;
};

}  // namespace

ReachResult saturate(const LabeledGraph& g, const Vpa& a, const std::vector<Element>& sources, bool withWitness) {
  Saturation s(g, a, withWitness);
  return s.run(sources, withWitness);
}

ReachResult l_reachable_pairs(const Interpretation& i, const SymbolBinding& b, const Vpa& a,
                              std::optional<std::vector<Element>> sources, bool withWitness) {
  auto g = labeled_graph(i, b, a.alphabet);
  std::vector<Element> src;
  if (sources) src = *sources;
  else
    for (Element d = 0; d < i.size; ++d) src.push_back(d);
  return saturate(g, a, src, withWitness);
}

std::map<Edge, int> bounded_oracle(const LabeledGraph& g, const Vpa& a, int maxLen) {
  struct Conf {
    Element elem;
    StateId state;
    std::vector<StackSym> stack;  // top part only
    bool deep;                    // symbols exist below the kept part
    auto operator<=>(const Conf&) const = default;
  };
  std::map<Edge, int> out;
  for (Element src = 0; src < g.size; ++src) {
    std::set<Conf> seen;
    std::vector<Conf> layer;
    for (auto q : a.initial) {
      Conf c{src, q, {}, false};
      if (seen.insert(c).second) layer.push_back(c);
    }
    for (int depth = 0;; ++depth) {
      for (const auto& c : layer)
        if (a.final.count(c.state) && !out.count({src, c.elem})) out[{src, c.elem}] = depth;
      if (depth == maxLen || layer.empty()) break;
      const int remaining = maxLen - depth - 1;
      std::vector<Conf> next;
      auto admit = [&](Conf c) {
        if (static_cast<int>(c.stack.size()) > remaining) {
          c.stack.erase(c.stack.begin(), c.stack.end() - remaining);
          c.deep = true;
        }
        if (seen.insert(c).second) next.push_back(std::move(c));
      };
      for (const auto& c : layer) {
        for (const auto& r : a.internals)
          if (r.from == c.state)
            for (auto e : g.adjacency.at(r.letter)[c.elem]) admit({e, r.to, c.stack, c.deep});
        for (const auto& r : a.calls)
          if (r.from == c.state)
            for (auto e : g.adjacency.at(r.letter)[c.elem]) {
              Conf n{e, r.to, c.stack, c.deep};
              n.stack.push_back(r.push);
              admit(std::move(n));
            }
        const bool empty = c.stack.empty() && !c.deep;
        for (const auto& r : a.returns) {
          if (r.from != c.state) continue;
          if (empty ? r.pop != kBottom : (c.stack.empty() || r.pop != c.stack.back())) continue;
          for (auto e : g.adjacency.at(r.letter)[c.elem]) {
            Conf n{e, r.to, c.stack, c.deep};
            if (!n.stack.empty()) n.stack.pop_back();
            admit(std::move(n));
          }
        }
      }
      layer = std::move(next);
    }
  }
  return out;
}

std::map<Edge, int> bounded_oracle(const Interpretation& i, const SymbolBinding& b, const Vpa& a, int maxLen) {
  return bounded_oracle(labeled_graph(i, b, a.alphabet), a, maxLen);
}

std::optional<Word> emptiness_witness(const Vpa& a) {
  LabeledGraph g;
  g.size = 1;
  for (const auto& s : a.alphabet.symbols()) g.adjacency[s] = {{0}};
  auto r = saturate(g, a, {0}, true);
  if (!r.contains(0, 0)) return std::nullopt;
  return r.witnesses.at({0, 0}).word;
}

}  // namespace vplc
