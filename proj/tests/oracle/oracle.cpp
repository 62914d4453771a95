#include "oracle/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace oracle {

using iorsp::Instance;
using std::int64_t;

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

struct Timeline {
  std::vector<std::pair<int64_t, int64_t>> open;
  std::vector<std::pair<int64_t, int64_t>> busy;

  bool free(int64_t a, int64_t b) const {
    bool inside = false;
    for (auto [lo, hi] : open) {
      if (lo <= a && b <= hi) inside = true;
    }
    if (!inside) return false;
    for (auto [lo, hi] : busy) {
      if (lo < b && a < hi) return false;
    }
    return true;
  }

  void events(int64_t from, std::vector<int64_t>& out) const {
    for (auto [lo, hi] : open) {
      if (lo >= from) out.push_back(lo);
    }
    for (auto [lo, hi] : busy) {
      if (hi >= from) out.push_back(hi);
    }
  }
};

Timeline timeline_of(const std::vector<int64_t>& w) {
  Timeline t;
  for (std::size_t i = 0; i < w.size(); i += 2) {
    t.open.emplace_back(w[i], i + 1 < w.size() ? w[i + 1] : kInf);
  }
  return t;
}

struct Need {
  std::vector<std::size_t> rooms;  // ascending; empty means the room is fixed
  int64_t room_len = 0;
  std::vector<std::vector<std::size_t>> unit_choices;
  int64_t unit_len = 0;
  std::vector<std::size_t> people;
  int64_t people_len = 0;
};

struct Spot {
  std::size_t room = 0;
  std::vector<std::size_t> units;
  int64_t start = 0;
};

std::optional<Spot> earliest(const std::vector<Timeline>& tl, const Need& need, int64_t t_min) {
  std::vector<int64_t> cand{t_min};
  for (std::size_t r : need.rooms) tl[r].events(t_min, cand);
  for (const auto& units : need.unit_choices) {
    for (std::size_t u : units) tl[u].events(t_min, cand);
  }
  for (std::size_t p : need.people) tl[p].events(t_min, cand);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  for (int64_t s : cand) {
    if (s == kInf) break;
    Spot spot;
    spot.start = s;
    bool ok = true;
    if (!need.rooms.empty()) {
      ok = false;
      for (std::size_t r : need.rooms) {
        if (tl[r].free(s, s + need.room_len)) {
          spot.room = r;
          ok = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; ok && i < need.unit_choices.size(); ++i) {
      ok = false;
      for (std::size_t u : need.unit_choices[i]) {
        if (std::find(spot.units.begin(), spot.units.end(), u) != spot.units.end()) continue;
        if (tl[u].free(s, s + need.unit_len)) {
          spot.units.push_back(u);
          ok = true;
          break;
        }
      }
    }
    for (std::size_t p : need.people) {
      if (ok && !tl[p].free(s, s + need.people_len)) ok = false;
    }
    if (ok) return spot;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Plan> sequential_schedule(const Instance& inst, const std::vector<std::size_t>& order) {
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::vector<std::size_t>> units_of;
  std::vector<Timeline> tl;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const auto& res = inst.resources[r];
    index[res.id] = r;
    if (res.equipment_type) units_of[*res.equipment_type].push_back(r);
    tl.push_back(timeline_of(res.slots.instants()));
  }
  const int64_t phi = inst.blocking_limit;

  Plan plan;
  plan.surgeries.resize(inst.surgeries.size());
  for (std::size_t k : order) {
    const auto& tasks = inst.surgeries[k].tasks;
    const std::size_t n = tasks.size();
    const bool stay = n >= 2;

    auto ids_to = [&](const std::vector<std::string>& ids) {
      std::vector<std::size_t> out;
      for (const auto& id : ids) out.push_back(index.at(id));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    std::vector<std::size_t> first_beds = ids_to(tasks[0].rooms);
    if (stay) {
      const auto last_beds = ids_to(tasks.back().rooms);
      std::erase_if(first_beds, [&](std::size_t r) {
        return std::find(last_beds.begin(), last_beds.end(), r) == last_beds.end();
      });
    }

    int64_t hint = 0;
    if (stay) {
      for (std::size_t t = 0; t + 1 < n; ++t) hint += tasks[t].duration + tasks[t].moving;
      hint += tasks.back().duration + tasks.back().cleaning;
      hint = std::max(hint, tasks[0].duration + tasks[0].cleaning);
    }

    int64_t attempt = 0;
    bool placed = false;
    for (int tries = 0; tries < 200000 && !placed; ++tries) {
      std::vector<Timeline> work = tl;
      std::vector<PlacedTask> out(n);
      int64_t ready = attempt, first = 0;
      std::size_t bed = 0;
      bool restart = false;
      for (std::size_t t = 0; t < n && !restart; ++t) {
        const auto& task = tasks[t];
        const bool last_of_stay = stay && t + 1 == n;
        Need need;
        if (!last_of_stay) {
          need.rooms = t == 0 ? first_beds : ids_to(task.rooms);
          need.room_len = (stay && t == 0) ? hint : task.duration + task.cleaning;
        }
        for (const auto& type : task.equipment_types) need.unit_choices.push_back(units_of.at(type));
        need.unit_len = task.duration;
        for (const auto& p : task.people) {
          const std::size_t r = index.at(p);
          if (std::find(need.people.begin(), need.people.end(), r) == need.people.end()) need.people.push_back(r);
        }
        need.people_len = task.duration + task.moving;

        auto spot = earliest(work, need, ready);
        if (!spot) return std::nullopt;
        if (last_of_stay) spot->room = bed;
        const int64_t wait = t == 0 ? 0 : spot->start - ready;
        if (wait > phi) {
          attempt = first + wait;
          restart = true;
          break;
        }
        const int64_t s = spot->start;
        if (t == 0) {
          first = s;
          bed = spot->room;
          work[bed].busy.emplace_back(s, s + need.room_len);
        } else if (last_of_stay) {
          const int64_t need_end = std::max(s + task.duration + task.cleaning, first + tasks[0].duration + tasks[0].cleaning);
          const int64_t held = first + hint;
          if (need_end > held) {
            if (!work[bed].free(held, need_end)) {
              hint = need_end - first;
              restart = true;
              break;
            }
            work[bed].busy.emplace_back(held, need_end);
          }
        } else {
          work[spot->room].busy.emplace_back(s, s + task.duration + task.cleaning);
        }
        for (std::size_t u : spot->units) work[u].busy.emplace_back(s, s + task.duration);
        for (std::size_t p : need.people) work[p].busy.emplace_back(s, s + task.duration + task.moving);
        out[t] = PlacedTask{spot->room, spot->units, s, wait};
        ready = s + task.duration + task.moving;
      }
      if (restart) continue;
      tl = std::move(work);
      plan.makespan = std::max(plan.makespan, out.back().start + tasks.back().duration);
      plan.surgeries[k] = std::move(out);
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return plan;
}

std::optional<int64_t> best_over_orders(const Instance& inst) {
  std::vector<std::size_t> perm(inst.surgeries.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::optional<int64_t> best;
  do {
    bool tiers_ok = true;
    for (std::size_t i = 1; i < perm.size(); ++i) {
      if (inst.surgeries[perm[i - 1]].priority > inst.surgeries[perm[i]].priority) tiers_ok = false;
    }
    if (!tiers_ok) continue;
    auto plan = sequential_schedule(inst, perm);
    if (plan && (!best || plan->makespan < *best)) best = plan->makespan;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

int64_t min_max_partition(const std::vector<int64_t>& loads, std::size_t machines) {
  const std::size_t n = loads.size();
  std::vector<std::size_t> pick(n, 0);
  int64_t best = kInf;
  for (;;) {
    std::vector<int64_t> sum(machines, 0);
    for (std::size_t i = 0; i < n; ++i) sum[pick[i]] += loads[i];
    best = std::min(best, n == 0 ? 0 : *std::max_element(sum.begin(), sum.end()));
    std::size_t i = 0;
    while (i < n && ++pick[i] == machines) pick[i++] = 0;
    if (i == n) break;
  }
  return best;
}

namespace {

int64_t room_cost(const std::vector<const OrItem*>& s) {
  if (s.empty()) return 0;
  int64_t total = 0;
  for (const OrItem* x : s) total += x->surgery;
  if (s.size() == 1) return total + s[0]->first + s[0]->last;
  int64_t best = kInf;
  for (std::size_t f = 0; f < s.size(); ++f) {
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (f != l) best = std::min(best, s[f]->first + s[l]->last);
    }
  }
  return total + best;
}

}  // namespace

int64_t min_max_or_assignment(const std::vector<OrItem>& items, std::size_t rooms) {
  const std::size_t n = items.size();
  std::vector<std::size_t> pick(n, 0);
  int64_t best = kInf;
  for (;;) {
    std::vector<std::vector<const OrItem*>> by_room(rooms);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = items[i].rooms[pick[i]];
      by_room[r].push_back(&items[i]);
    }
    if (ok) {
      int64_t worst = 0;
      for (const auto& s : by_room) worst = std::max(worst, room_cost(s));
      best = std::min(best, worst);
    }
    std::size_t i = 0;
    while (i < n && ++pick[i] == items[i].rooms.size()) pick[i++] = 0;
    if (i == n) break;
  }
  return best;
}

std::vector<int64_t> bed_stays(const Instance& inst) {
  std::vector<int64_t> out;
  for (const auto& s : inst.surgeries) {
    bool on_bed = false;
    for (const auto& room : s.tasks.front().rooms) {
      auto r = inst.find_resource(room);
      if (r && inst.resources[*r].kind == iorsp::ResourceKind::bed) on_bed = true;
    }
    if (!on_bed) continue;
    int64_t total = 0;
    for (const auto& t : s.tasks) total += t.duration + t.moving;
    out.push_back(total);
  }
  return out;
}

std::vector<OrItem> or_items(const Instance& inst, std::size_t* room_count) {
  std::map<std::string, std::size_t> or_index;
  for (const auto& r : inst.resources) {
    if (r.kind == iorsp::ResourceKind::operating_room) or_index.emplace(r.id, or_index.size());
  }
  if (room_count) *room_count = or_index.size();
  std::vector<OrItem> out;
  for (const auto& s : inst.surgeries) {
    std::size_t at = s.tasks.size();
    for (std::size_t t = 0; t < s.tasks.size() && at == s.tasks.size(); ++t) {
      for (const auto& room : s.tasks[t].rooms) {
        if (or_index.count(room)) at = t;
      }
    }
    if (at == s.tasks.size()) continue;
    OrItem item;
    item.first = at == 0 ? 0 : s.tasks[0].duration + s.tasks[0].moving;
    item.surgery = s.tasks[at].duration + s.tasks[at].moving;
    for (std::size_t t = at + 1; t < s.tasks.size(); ++t) item.last += s.tasks[t].duration + s.tasks[t].moving;
    for (const auto& room : s.tasks[at].rooms) {
      if (auto it = or_index.find(room); it != or_index.end()) item.rooms.push_back(it->second);
    }
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace oracle
