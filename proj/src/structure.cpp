#include "synk/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace synk {

Partition::Partition(std::vector<int> class_ids) : ids_(std::move(class_ids)) {
  std::unordered_map<int, int> seen;
  for (int& id : ids_) {
    if (id < 0) {
      id = -1;
      continue;
    }
    auto [it, fresh] = seen.emplace(id, static_cast<int>(seen.size()));
    id = it->second;
  }
  classes_ = seen.size();
}

Partition Partition::empty(std::size_t n) { return Partition(std::vector<int>(n, -1)); }

Partition Partition::total(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

Partition Partition::identity(std::size_t n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return Partition(std::move(ids));
}

Partition Partition::closure(std::size_t n,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> touched(n, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (auto [u, v] : pairs) {
    if (u >= n || v >= n) throw std::out_of_range("relation pair outside the world range");
    touched[u] = touched[v] = 1;
    std::size_t a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> ids(n, -1);
  for (std::size_t w = 0; w < n; ++w) {
    if (touched[w]) ids[w] = static_cast<int>(find(w));
  }
  return Partition(std::move(ids));
}

std::vector<std::vector<std::size_t>> Partition::classes() const {
  std::vector<std::vector<std::size_t>> out(classes_);
  for (std::size_t w = 0; w < ids_.size(); ++w) {
    if (ids_[w] >= 0) out[static_cast<std::size_t>(ids_[w])].push_back(w);
  }
  return out;
}

bool Partition::subset_of(const Partition& other) const { return !missing_in(other); }

std::optional<std::pair<std::size_t, std::size_t>> Partition::missing_in(
    const Partition& other) const {
  // Each class here must sit inside one class of `other`.
  std::vector<int> image(classes_, -2);
  std::vector<std::size_t> first(classes_, 0);
  for (std::size_t w = 0; w < ids_.size(); ++w) {
    int c = ids_[w];
    if (c < 0) continue;
    int o = other.ids_[w];
    if (o < 0) return std::make_pair(w, w);
    if (image[c] == -2) {
      image[c] = o;
      first[c] = w;
    } else if (image[c] != o) {
      return std::make_pair(first[c], w);
    }
  }
  return std::nullopt;
}

Partition Partition::intersect(const Partition& other) const {
  std::map<std::pair<int, int>, int> key;
  std::vector<int> ids(ids_.size(), -1);
  for (std::size_t w = 0; w < ids_.size(); ++w) {
    if (ids_[w] < 0 || other.ids_[w] < 0) continue;
    auto [it, fresh] = key.emplace(std::make_pair(ids_[w], other.ids_[w]), static_cast<int>(key.size()));
    ids[w] = it->second;
  }
  return Partition(std::move(ids));
}

std::optional<std::size_t> Structure::world_index(std::string_view name) const {
  for (std::size_t w = 0; w < world_count(); ++w) {
    if (world_name(w) == name) return w;
  }
  return std::nullopt;
}

std::size_t Structure::require_world(std::string_view name) const {
  auto w = world_index(name);
  if (!w) throw std::invalid_argument("unknown world '" + std::string(name) + "'");
  return *w;
}

Evaluator::Evaluator(const Structure& s, bool strict) : s_(s), strict_(strict) {}

const Partition& Evaluator::relation(const AgentPattern& g) {
  auto it = relations_.find(g);
  if (it != relations_.end()) return it->second;
  if (g.empty() && !warned_empty_) {
    warned_empty_ = true;
    warnings_.push_back("formula uses the empty pattern []; it relates every world (vacuous reading)");
  }
  return relations_.emplace(g, s_.relation(g)).first->second;
}

const std::vector<char>& Evaluator::extension(const Formula& f) {
  auto it = memo_.find(f.id());
  if (it != memo_.end()) return it->second.second;
  const std::size_t n = s_.world_count();
  std::vector<char> out(n, 0);
  switch (f.kind()) {
    case FormulaKind::atom: {
      const std::string& p = f.atom_name();
      if (p != kReservedAtom) {
        if (strict_ && !s_.knows_proposition(p)) {
          throw UnknownProposition("unknown proposition '" + p + "'");
        }
        for (std::size_t w = 0; w < n; ++w) out[w] = s_.holds(w, p) ? 1 : 0;
      }
      break;
    }
    case FormulaKind::neg: {
      const auto& a = extension(f.child());
      for (std::size_t w = 0; w < n; ++w) out[w] = a[w] ? 0 : 1;
      break;
    }
    case FormulaKind::conj: {
      const auto a = extension(f.left());
      const auto& b = extension(f.right());
      for (std::size_t w = 0; w < n; ++w) out[w] = (a[w] && b[w]) ? 1 : 0;
      break;
    }
    case FormulaKind::box: {
      const auto body = extension(f.child());
      const Partition& r = relation(f.pattern());
      std::vector<char> class_ok(r.class_count(), 1);
      for (std::size_t w = 0; w < n; ++w) {
        if (r.in_domain(w) && !body[w]) class_ok[static_cast<std::size_t>(r.class_of(w))] = 0;
      }
      for (std::size_t w = 0; w < n; ++w) {
        out[w] = r.in_domain(w) ? class_ok[static_cast<std::size_t>(r.class_of(w))] : 1;
      }
      break;
    }
  }
  return memo_.emplace(f.id(), std::make_pair(f, std::move(out))).first->second.second;
}

std::optional<std::size_t> Evaluator::first_failure(const Formula& f) {
  const auto& ext = extension(f);
  for (std::size_t w = 0; w < ext.size(); ++w) {
    if (!ext[w]) return w;
  }
  return std::nullopt;
}

}  // namespace synk
