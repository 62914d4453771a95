#include "iorsp/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace iorsp {

std::string_view to_string(BoundStatus s) { return s == BoundStatus::optimal ? "optimal" : "bound"; }

std::vector<BedTerm> bed_terms(const Instance& inst) {
  std::vector<BedTerm> out;
  for (std::size_t k = 0; k < inst.surgeries.size(); ++k) {
    const Surgery& s = inst.surgeries[k];
    if (s.tasks.empty()) continue;
    const bool starts_in_bed = std::any_of(s.tasks.front().rooms.begin(), s.tasks.front().rooms.end(), [&](const std::string& id) {
      auto r = inst.find_resource(id);
      return r && inst.resources[*r].kind == ResourceKind::bed;
    });
    if (!starts_in_bed) continue;
    Duration stay = 0;
    for (const TaskSpec& t : s.tasks) stay += t.duration + t.moving;
    out.push_back({k, stay});
  }
  return out;
}

OrTerms or_terms(const Instance& inst) {
  OrTerms out;
  std::vector<std::optional<std::size_t>> or_slot(inst.resources.size());
  for (ResourceIndex r = 0; r < inst.resources.size(); ++r) {
    if (inst.resources[r].kind == ResourceKind::operating_room) {
      or_slot[r] = out.rooms.size();
      out.rooms.push_back(r);
    }
  }
  for (std::size_t k = 0; k < inst.surgeries.size(); ++k) {
    const Surgery& s = inst.surgeries[k];
    std::optional<std::size_t> or_task;
    std::vector<std::size_t> rooms;
    for (std::size_t t = 0; t < s.tasks.size() && !or_task; ++t) {
      for (const std::string& id : s.tasks[t].rooms) {
        auto r = inst.find_resource(id);
        if (r && or_slot[*r]) rooms.push_back(*or_slot[*r]);
      }
      if (!rooms.empty()) or_task = t;
    }
    if (!or_task) {
      out.warnings.push_back("surgery " + s.id + " has no operating-room task and is left out of the OR model");
      continue;
    }
    std::sort(rooms.begin(), rooms.end());
    rooms.erase(std::unique(rooms.begin(), rooms.end()), rooms.end());
    OrTerm term{k, 0, 0, 0, std::move(rooms)};
    // Nothing precedes an OR task that opens the chain.
    if (*or_task > 0) term.first = s.tasks.front().duration + s.tasks.front().moving;
    term.surgery_time = s.tasks[*or_task].duration + s.tasks[*or_task].moving;
    for (std::size_t t = *or_task + 1; t < s.tasks.size(); ++t) term.last += s.tasks[t].duration + s.tasks[t].moving;
    out.terms.push_back(std::move(term));
  }
  return out;
}

namespace {

constexpr Duration kInf = std::numeric_limits<Duration>::max() / 4;

// Two smallest values with the index of the smallest.
struct TwoMin {
  Duration v1 = kInf, v2 = kInf;
  std::size_t i1 = static_cast<std::size_t>(-1);
  void add(Duration v, std::size_t i) {
    if (v < v1) {
      v2 = v1;
      v1 = v;
      i1 = i;
    } else if (v < v2) {
      v2 = v;
    }
  }
};

Duration ceil_div(Duration a, Duration b) { return (a + b - 1) / b; }

class Budget {
 public:
  explicit Budget(const BoundOptions& o) : options_(o), started_(std::chrono::steady_clock::now()) {}

  // True once the node or time allowance is spent.
  bool exhausted() {
    ++nodes_;
    if (stopped_) return true;
    if (options_.node_limit && nodes_ > *options_.node_limit) stopped_ = true;
    if (options_.use_time_cap && (nodes_ & 1023) == 0 && seconds() > options_.time_cap_s) stopped_ = true;
    return stopped_;
  }
  bool stopped() const { return stopped_; }
  std::int64_t nodes() const { return nodes_; }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  }

 private:
  const BoundOptions& options_;
  std::chrono::steady_clock::time_point started_;
  std::int64_t nodes_ = 0;
  bool stopped_ = false;
};

BoundResult finish(Duration incumbent, Duration root_bound, const Budget& budget) {
  BoundResult r;
  r.nodes = budget.nodes();
  r.seconds = budget.seconds();
  if (budget.stopped() && incumbent > root_bound) {
    r.value = root_bound;
    r.status = BoundStatus::bound;
  } else {
    r.value = incumbent;
    r.status = BoundStatus::optimal;
  }
  return r;
}

class BedSearch {
 public:
  BedSearch(std::vector<Duration> stays, std::size_t beds, Duration incumbent, Duration root, Budget& budget)
      : stays_(std::move(stays)), loads_(beds, 0), incumbent_(incumbent), root_(root), budget_(budget) {
    remaining_.assign(stays_.size() + 1, 0);
    for (std::size_t i = stays_.size(); i-- > 0;) remaining_[i] = remaining_[i + 1] + stays_[i];
  }

  Duration run() {
    descend(0, 0);
    return incumbent_;
  }

 private:
  void descend(std::size_t i, Duration max_load) {
    if (incumbent_ == root_ || budget_.exhausted()) return;
    if (i == stays_.size()) {
      incumbent_ = max_load;
      return;
    }
    // Headroom below the incumbent must absorb every unassigned stay.
    Duration room = 0;
    for (Duration l : loads_) room += std::max<Duration>(0, incumbent_ - 1 - l);
    if (room < remaining_[i]) return;
    std::vector<std::size_t> order(loads_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return loads_[a] < loads_[b]; });
    Duration last_tried = -1;
    for (std::size_t b : order) {
      // Beds with equal loads are interchangeable; empty beds in particular.
      if (loads_[b] == last_tried) continue;
      last_tried = loads_[b];
      const Duration load = loads_[b] + stays_[i];
      if (std::max(load, root_) >= incumbent_) continue;
      loads_[b] = load;
      descend(i + 1, std::max(max_load, load));
      loads_[b] -= stays_[i];
      if (incumbent_ == root_ || budget_.stopped()) return;
    }
  }

  std::vector<Duration> stays_;
  std::vector<Duration> loads_;
  std::vector<Duration> remaining_;
  Duration incumbent_;
  Duration root_;
  Budget& budget_;
};

}  // namespace

BoundResult solve_bed_model(std::span<const Duration> stays_in, std::size_t beds, const BoundOptions& options) {
  if (beds == 0) throw BoundError("the bed model needs at least one bed");
  Budget budget(options);
  std::vector<Duration> stays(stays_in.begin(), stays_in.end());
  std::sort(stays.begin(), stays.end(), std::greater<>());
  if (stays.empty()) return finish(0, 0, budget);

  const Duration total = std::accumulate(stays.begin(), stays.end(), Duration{0});
  Duration root = std::max(ceil_div(total, static_cast<Duration>(beds)), stays.front());
  // Two of the beds+1 longest stays must share a bed.
  if (stays.size() > beds) root = std::max(root, stays[beds - 1] + stays[beds]);

  // Longest-processing-time seed.
  std::vector<Duration> loads(beds, 0);
  for (Duration s : stays) *std::min_element(loads.begin(), loads.end()) += s;
  const Duration lpt = *std::max_element(loads.begin(), loads.end());

  BedSearch search(std::move(stays), beds, lpt, root, budget);
  const Duration best = search.run();
  return finish(best, root, budget);
}

Duration or_room_cost(std::span<const OrTerm* const> assigned) {
  if (assigned.empty()) return 0;
  Duration sum = 0;
  for (const OrTerm* t : assigned) sum += t->surgery_time;
  if (assigned.size() == 1) return sum + assigned[0]->first + assigned[0]->last;
  TwoMin f, l;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    f.add(assigned[i]->first, i);
    l.add(assigned[i]->last, i);
  }
  const Duration pair = f.i1 != l.i1 ? f.v1 + l.v1 : std::min(f.v1 + l.v2, f.v2 + l.v1);
  return sum + pair;
}

namespace {

class OrSearch {
 public:
  OrSearch(std::vector<const OrTerm*> terms, std::size_t rooms, Duration incumbent, Budget& budget)
      : terms_(std::move(terms)), rooms_(rooms), assigned_(rooms), sum_(rooms, 0), incumbent_(incumbent),
        budget_(budget) {
    const std::size_t n = terms_.size();
    suffix_first_.assign(rooms, std::vector<Duration>(n + 1, kInf));
    suffix_last_.assign(rooms, std::vector<Duration>(n + 1, kInf));
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t r = 0; r < rooms; ++r) {
        suffix_first_[r][i] = suffix_first_[r][i + 1];
        suffix_last_[r][i] = suffix_last_[r][i + 1];
      }
      for (std::size_t r : terms_[i]->rooms) {
        suffix_first_[r][i] = std::min(suffix_first_[r][i], terms_[i]->first);
        suffix_last_[r][i] = std::min(suffix_last_[r][i], terms_[i]->last);
      }
    }
    // Rooms compatible with exactly the same surgeries are interchangeable.
    std::vector<std::vector<bool>> signature(rooms, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r : terms_[i]->rooms) signature[r][i] = true;
    }
    room_class_.resize(rooms);
    for (std::size_t r = 0; r < rooms; ++r) {
      room_class_[r] = r;
      for (std::size_t q = 0; q < r; ++q) {
        if (signature[q] == signature[r]) {
          room_class_[r] = room_class_[q];
          break;
        }
      }
    }
    Duration total = 0;
    for (const OrTerm* t : terms_) total += t->surgery_time;
    volume_ = ceil_div(total, static_cast<Duration>(rooms));
    root_ = volume_;
    for (std::size_t i = 0; i < n; ++i) {
      Duration best = kInf;
      for (std::size_t r : terms_[i]->rooms) {
        best = std::min(best, terms_[i]->surgery_time + suffix_first_[r][0] + suffix_last_[r][0]);
      }
      root_ = std::max(root_, best);
    }
  }

  Duration root_bound() const { return root_; }

  Duration run() {
    if (incumbent_ > root_) descend(0);
    return incumbent_;
  }

 private:
  // Valid bound on room r's final cost given positions >= i are unassigned.
  Duration room_bound(std::size_t r, std::size_t i) const {
    if (assigned_[r].empty()) return 0;
    Duration f = suffix_first_[r][i], l = suffix_last_[r][i];
    for (const OrTerm* t : assigned_[r]) {
      f = std::min(f, t->first);
      l = std::min(l, t->last);
    }
    return sum_[r] + f + l;
  }

  Duration node_bound(std::size_t i) const {
    Duration b = volume_;
    for (std::size_t r = 0; r < rooms_; ++r) b = std::max(b, room_bound(r, i));
    return b;
  }

  void descend(std::size_t i) {
    if (incumbent_ <= root_ || budget_.exhausted()) return;
    if (i == terms_.size()) {
      Duration cost = 0;
      for (std::size_t r = 0; r < rooms_; ++r) cost = std::max(cost, or_room_cost(assigned_[r]));
      incumbent_ = std::min(incumbent_, cost);
      return;
    }
    const OrTerm* t = terms_[i];
    std::vector<std::pair<Duration, std::size_t>> options;
    std::vector<std::size_t> empty_classes;
    for (std::size_t r : t->rooms) {
      if (assigned_[r].empty()) {
        if (std::find(empty_classes.begin(), empty_classes.end(), room_class_[r]) != empty_classes.end()) continue;
        empty_classes.push_back(room_class_[r]);
      }
      assigned_[r].push_back(t);
      sum_[r] += t->surgery_time;
      options.emplace_back(node_bound(i + 1), r);
      assigned_[r].pop_back();
      sum_[r] -= t->surgery_time;
    }
    std::stable_sort(options.begin(), options.end());
    for (const auto& [bound, r] : options) {
      if (bound >= incumbent_) break;
      assigned_[r].push_back(t);
      sum_[r] += t->surgery_time;
      descend(i + 1);
      assigned_[r].pop_back();
      sum_[r] -= t->surgery_time;
      if (incumbent_ <= root_ || budget_.stopped()) return;
    }
  }

  std::vector<const OrTerm*> terms_;
  std::size_t rooms_;
  std::vector<std::vector<const OrTerm*>> assigned_;
  std::vector<Duration> sum_;
  std::vector<std::vector<Duration>> suffix_first_, suffix_last_;
  std::vector<std::size_t> room_class_;
  Duration volume_ = 0;
  Duration root_ = 0;
  Duration incumbent_;
  Budget& budget_;
};

}  // namespace

BoundResult solve_or_model(std::span<const OrTerm> terms, std::size_t rooms, const BoundOptions& options) {
  if (rooms == 0) throw BoundError("the OR model needs at least one operating room");
  Budget budget(options);
  std::vector<const OrTerm*> order;
  for (const OrTerm& t : terms) {
    if (t.rooms.empty()) throw BoundError("surgery " + std::to_string(t.surgery) + " has no compatible operating room");
    for (std::size_t r : t.rooms) {
      if (r >= rooms) throw BoundError("operating-room index out of range");
    }
    order.push_back(&t);
  }
  if (order.empty()) return finish(0, 0, budget);
  std::stable_sort(order.begin(), order.end(), [](const OrTerm* a, const OrTerm* b) {
    return a->surgery_time + a->first + a->last > b->surgery_time + b->first + b->last;
  });

  // Greedy seed: each surgery to the room whose cost grows least.
  std::vector<std::vector<const OrTerm*>> assigned(rooms);
  for (const OrTerm* t : order) {
    std::size_t best_room = t->rooms.front();
    Duration best_cost = kInf;
    for (std::size_t r : t->rooms) {
      assigned[r].push_back(t);
      const Duration c = or_room_cost(assigned[r]);
      assigned[r].pop_back();
      if (c < best_cost) {
        best_cost = c;
        best_room = r;
      }
    }
    assigned[best_room].push_back(t);
  }
  Duration greedy = 0;
  for (const auto& a : assigned) greedy = std::max(greedy, or_room_cost(a));

  OrSearch search(order, rooms, greedy, budget);
  const Duration best = search.run();
  return finish(best, search.root_bound(), budget);
}

BoundResult bed_lower_bound(const Instance& inst, const BoundOptions& options) {
  const auto beds = static_cast<std::size_t>(std::count_if(inst.resources.begin(), inst.resources.end(),
                                                           [](const Resource& r) { return r.kind == ResourceKind::bed; }));
  if (beds == 0) throw BoundError("instance has no beds");
  std::vector<Duration> stays;
  for (const BedTerm& t : bed_terms(inst)) stays.push_back(t.stay);
  return solve_bed_model(stays, beds, options);
}

BoundResult or_lower_bound(const Instance& inst, const BoundOptions& options) {
  const OrTerms terms = or_terms(inst);
  if (terms.rooms.empty()) throw BoundError("instance has no operating rooms");
  if (terms.terms.empty()) throw BoundError("no surgery has an operating-room task");
  return solve_or_model(terms.terms, terms.rooms.size(), options);
}

BestBound best_lower_bound(const Instance& inst, const BoundOptions& options) {
  BestBound out;
  try {
    out.bed = bed_lower_bound(inst, options);
  } catch (const BoundError&) {
  }
  try {
    out.operating_room = or_lower_bound(inst, options);
  } catch (const BoundError&) {
  }
  if (!out.bed && !out.operating_room) throw BoundError("neither relaxation applies to the instance");
  out.value = std::max(out.bed ? out.bed->value : 0, out.operating_room ? out.operating_room->value : 0);
  return out;
}

}  // namespace iorsp
