#include "amalgam/stone.hpp"

#include <algorithm>
#include <set>

namespace amalgam::stone {

DiscreteSystem::DiscreteSystem(
    order::AlmostLattice index, std::vector<DiscreteSpace> spaces,
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> strict_maps)
    : index_(std::move(index)), spaces_(std::move(spaces)) {
  const std::size_t n = index_.size();
  if (spaces_.size() != n) throw ContractError("discrete system: need one space per index element");
  for (auto& sp : spaces_) {
    if (sp.points.empty()) throw ContractError("discrete system: empty space");
    std::sort(sp.points.begin(), sp.points.end());
    if (std::adjacent_find(sp.points.begin(), sp.points.end()) != sp.points.end())
      throw ContractError("discrete system: duplicate point id");
  }
  proj_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& id_map = proj_[i * n + i];
    id_map.resize(spaces_[i].points.size());
    for (std::size_t p = 0; p < id_map.size(); ++p) id_map[p] = static_cast<std::uint32_t>(p);
  }
  for (auto& [key, table] : strict_maps) {
    const auto [upper, lower] = key;
    if (upper >= n || lower >= n) throw ContractError("discrete system: map index out of range");
    if (upper == lower || !index_.leq(lower, upper))
      throw ContractError("discrete system: map for a pair that is not strictly comparable");
    if (table.size() != spaces_[upper].points.size())
      throw ContractError("discrete system: map size mismatch at (" + index_.id(upper) + "," +
                          index_.id(lower) + ")");
    for (std::uint32_t v : table)
      if (v >= spaces_[lower].points.size())
        throw ContractError("discrete system: map value out of range");
    proj_[upper * n + lower] = std::move(table);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j && index_.leq(i, j) && proj_[j * n + i].size() != spaces_[j].points.size())
        throw ContractError("discrete system: missing map for comparable pair (" + index_.id(j) +
                            "," + index_.id(i) + ")");
}

const std::vector<std::uint32_t>& DiscreteSystem::proj(std::size_t j, std::size_t i) const {
  if (!index_.leq(i, j)) throw ContractError("discrete system: proj requires i <= j");
  return proj_[j * index_.size() + i];
}

std::uint32_t DiscreteSystem::project_point(std::size_t j, std::size_t i, std::uint32_t point) const {
  return proj(j, i)[point];
}

DiscreteSystem dualize(const diagram::BASystem& system) {
  const std::size_t n = system.index().size();
  std::vector<DiscreteSpace> spaces;
  for (std::size_t i = 0; i < n; ++i) spaces.push_back({system.algebra(i).atoms()});
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j && system.index().leq(i, j)) maps[{j, i}] = system.atom_map(j, i);
  DiscreteSystem ds(system.index(), std::move(spaces), std::move(maps));
  auto rep = validate_discrete(ds);
  if (!rep.ok)
    throw ContractError("dualize: system dual failed validation (" + rep.violations.front().kind + ")");
  return ds;
}

TopoCorrectness check_topological_correctness(const DiscreteSystem& ds, std::size_t i, std::size_t j) {
  const auto& L = ds.index();
  if (!L.has_join(i, j)) throw ContractError("topological correctness: join undefined");
  const std::size_t m = L.meet(i, j), t = L.join(i, j);
  const std::size_t ni = ds.space(i).points.size(), nj = ds.space(j).points.size();
  std::vector<std::uint8_t> lifted(ni * nj, 0);
  for (std::size_t p = 0; p < ds.space(t).points.size(); ++p)
    lifted[ds.project_point(t, i, static_cast<std::uint32_t>(p)) * nj +
           ds.project_point(t, j, static_cast<std::uint32_t>(p))] = 1;
  TopoCorrectness res;
  res.ok = true;
  for (std::size_t a = 0; a < ni; ++a)
    for (std::size_t b = 0; b < nj; ++b) {
      if (ds.project_point(i, m, static_cast<std::uint32_t>(a)) !=
          ds.project_point(j, m, static_cast<std::uint32_t>(b)))
        continue;
      if (!lifted[a * nj + b]) {
        res.ok = false;
        res.witness = {ds.space(i).points[a], ds.space(j).points[b]};
        return res;
      }
    }
  return res;
}

diagram::SystemReport validate_discrete(const DiscreteSystem& ds) {
  diagram::SystemReport rep;
  const auto& L = ds.index();
  const std::size_t n = L.size();

  [&] {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || !L.leq(i, j)) continue;
        std::vector<std::uint8_t> hit(ds.space(i).points.size(), 0);
        for (std::uint32_t v : ds.proj(j, i)) hit[v] = 1;
        if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
          rep.violations.push_back({"surjectivity", {L.id(j), L.id(i)}});
          return;
        }
      }
  }();

  [&] {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (!L.leq(j, k)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (!L.leq(i, j)) continue;
          const auto& kj = ds.proj(k, j);
          const auto& ji = ds.proj(j, i);
          const auto& ki = ds.proj(k, i);
          for (std::size_t p = 0; p < kj.size(); ++p)
            if (ji[kj[p]] != ki[p]) {
              rep.violations.push_back(
                  {"commutativity", {L.id(i), L.id(j), L.id(k), ds.space(k).points[p]}});
              return;
            }
        }
      }
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!L.has_join(i, j)) continue;
        auto res = check_topological_correctness(ds, i, j);
        if (!res.ok) {
          rep.violations.push_back(
              {"correctness", {L.id(i), L.id(j), res.witness[0], res.witness[1]}});
          return;
        }
      }
  }();

  rep.ok = rep.violations.empty();
  return rep;
}

std::vector<std::size_t> PartialThread::domain() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] >= 0) out.push_back(i);
  return out;
}

PartialThread empty_thread(const DiscreteSystem& ds) {
  return {std::vector<std::int64_t>(ds.count(), -1)};
}

PartialThread singleton_thread(const DiscreteSystem& ds, std::size_t i, std::uint32_t point) {
  if (i >= ds.count() || point >= ds.space(i).points.size())
    throw ContractError("singleton_thread: index or point out of range");
  auto t = empty_thread(ds);
  t.values[i] = point;
  return t;
}

bool coherent_on_domain(const DiscreteSystem& ds, const PartialThread& y) {
  const auto dom = y.domain();
  for (std::size_t a : dom)
    for (std::size_t b : dom)
      if (ds.index().leq(a, b) &&
          ds.project_point(b, a, static_cast<std::uint32_t>(y.values[b])) !=
              static_cast<std::uint32_t>(y.values[a]))
        return false;
  return true;
}

namespace {

// Lexicographically least point of the space at `at` with pinned projections.
std::uint32_t pinned_point(const DiscreteSystem& ds, std::size_t at,
                           const std::vector<std::pair<std::size_t, std::uint32_t>>& pins) {
  for (std::uint32_t p = 0; p < ds.space(at).points.size(); ++p) {
    bool good = true;
    for (const auto& [k, v] : pins)
      if (ds.project_point(at, k, p) != v) { good = false; break; }
    if (good) return p;
  }
  std::string msg = "no point of " + ds.index().id(at) + " satisfies the pins";
  for (const auto& [k, v] : pins)
    msg += " (" + ds.index().id(k) + " -> " + ds.space(k).points[v] + ")";
  throw DefectError("extend_partial_thread: " + msg);
}

}  // namespace

PartialThread extend_partial_thread(const DiscreteSystem& ds, const PartialThread& y, std::size_t j) {
  const auto& L = ds.index();
  if (j >= L.size()) throw ContractError("extend_partial_thread: index out of range");
  if (y.values.size() != L.size()) throw ContractError("extend_partial_thread: malformed thread");
  const auto dom = y.domain();
  if (!order::is_closed(L, dom)) throw ContractError("extend_partial_thread: domain not closed");
  if (!coherent_on_domain(ds, y)) throw ContractError("extend_partial_thread: input not coherent");
  if (y.values[j] >= 0) return y;

  PartialThread out = y;
  auto val = [&](std::size_t k) { return static_cast<std::uint32_t>(out.values[k]); };
  auto assign = [&](std::size_t k, std::uint32_t v) {
    if (out.values[k] >= 0) {
      if (val(k) != v)
        throw DefectError("extend_partial_thread: conflicting assignment at " + L.id(k));
      return;
    }
    out.values[k] = v;
  };

  const order::ClosedSet G = [&] {
    std::vector<std::size_t> seed = dom;
    seed.push_back(j);
    return order::closure(L, seed);
  }();
  auto project_down = [&](std::size_t from) {
    for (std::size_t k : G.members())
      if (L.leq(k, from)) assign(k, ds.project_point(from, k, val(from)));
  };

  if (dom.empty()) {
    assign(j, 0);
  } else {
    const auto tops = order::top_elements(L, order::as_closed_set(L, dom));
    const auto g_tops = order::top_elements(L, G);

    if (tops.size() == 1) {
      const std::size_t j0 = tops[0];
      if (L.has_join(j0, j)) {
        const std::size_t m = L.join(j0, j);
        assign(m, pinned_point(ds, m, {{j0, val(j0)}}));
        project_down(m);
      } else {
        if (g_tops.size() != 2 || (g_tops[0] != j0 && g_tops[1] != j0))
          throw DefectError("extend_partial_thread: unexpected top shape after closure");
        const std::size_t jp = g_tops[0] == j0 ? g_tops[1] : g_tops[0];
        if (!L.leq(j, jp))
          throw DefectError("extend_partial_thread: fresh index not under the second top");
        const std::size_t w = L.meet(j0, jp);
        assign(jp, pinned_point(ds, jp, {{w, ds.project_point(j0, w, val(j0))}}));
        project_down(j0);
        project_down(jp);
      }
    } else {
      const std::size_t j0 = tops[0], j1 = tops[1];
      const bool e0 = L.has_join(j0, j), e1 = L.has_join(j1, j);
      if (!e0 && !e1)
        throw DefectError("extend_partial_thread: two-of-three bound failed");
      if (e0 != e1) {
        const std::size_t ja = e0 ? j0 : j1;  // the top that joins with j
        const std::size_t jb = e0 ? j1 : j0;
        const std::size_t t = L.join(ja, j);
        const std::size_t w = L.meet(t, jb);
        assign(w, ds.project_point(jb, w, val(jb)));
        if (L.meet(ja, w) != L.meet(ja, jb) || !L.has_join(ja, w) || L.join(ja, w) != t)
          throw DefectError("extend_partial_thread: meet-cover identity failed in the one-join case");
        assign(t, pinned_point(ds, t, {{ja, val(ja)}, {w, val(w)}}));
        project_down(t);
        project_down(jb);
      } else {
        const std::size_t a = L.meet(j0, j), b = L.meet(j1, j);
        assign(a, ds.project_point(j0, a, val(j0)));
        assign(b, ds.project_point(j1, b, val(j1)));
        if (!L.has_join(a, b) || L.join(a, b) != j)
          throw DefectError("extend_partial_thread: meet-cover identity failed in the two-join case");
        assign(j, pinned_point(ds, j, {{a, val(a)}, {b, val(b)}}));
        const std::size_t t0 = L.join(j0, j), t1 = L.join(j1, j);
        assign(t0, pinned_point(ds, t0, {{j0, val(j0)}, {j, val(j)}}));
        assign(t1, pinned_point(ds, t1, {{j1, val(j1)}, {j, val(j)}}));
        project_down(t0);
        project_down(t1);
      }
    }
  }

  // The construction must land exactly on the closure, stay coherent and
  // preserve the input.
  if (out.domain() != G.members())
    throw DefectError("extend_partial_thread: output domain is not the closure");
  if (!coherent_on_domain(ds, out))
    throw DefectError("extend_partial_thread: one-pass construction produced an incoherent thread");
  for (std::size_t k : dom)
    if (out.values[k] != y.values[k])
      throw DefectError("extend_partial_thread: input values were altered");
  return out;
}

namespace {

std::uint64_t product_bound(const DiscreteSystem& ds, std::uint64_t cap) {
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < ds.count(); ++i) {
    prod *= ds.space(i).points.size();
    if (prod > cap) return prod;
  }
  return prod;
}

std::vector<Thread> filtration_oracle(const DiscreteSystem& ds) {
  const std::size_t n = ds.count();
  const auto& L = ds.index();
  std::vector<Thread> out;
  Thread t(n, 0);
  while (true) {
    bool coherent = true;
    for (std::size_t a = 0; a < n && coherent; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && L.leq(a, b) && ds.project_point(b, a, t[b]) != t[a]) {
          coherent = false;
          break;
        }
    if (coherent) out.push_back(t);
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++t[pos] < ds.space(pos).points.size()) break;
      t[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::vector<Thread> extension_enumeration(const DiscreteSystem& ds) {
  const std::size_t n = ds.count();
  const auto& L = ds.index();
  std::vector<PartialThread> layer{empty_thread(ds)};
  std::vector<std::size_t> covered;
  while (covered.size() < n) {
    std::size_t j = 0;
    while (std::binary_search(covered.begin(), covered.end(), j)) ++j;
    auto seed = covered;
    seed.push_back(j);
    const auto G = order::closure(L, seed);
    std::vector<std::size_t> fresh;
    for (std::size_t k : G.members())
      if (!std::binary_search(covered.begin(), covered.end(), k)) fresh.push_back(k);

    std::vector<PartialThread> next;
    for (const auto& y : layer) {
      // Enumerate every coherent completion over the fresh elements.
      PartialThread cur = y;
      std::vector<std::size_t> stack;
      std::size_t depth = 0;
      std::vector<std::uint32_t> choice(fresh.size(), 0);
      while (true) {
        if (depth == fresh.size()) {
          next.push_back(cur);
          if (depth == 0) break;
          --depth;
          cur.values[fresh[depth]] = -1;
          ++choice[depth];
          continue;
        }
        const std::size_t k = fresh[depth];
        bool placed = false;
        for (std::uint32_t v = choice[depth]; v < ds.space(k).points.size(); ++v) {
          bool ok = true;
          for (std::size_t other : G.members()) {
            if (cur.values[other] < 0 || ok == false) continue;
            const auto ov = static_cast<std::uint32_t>(cur.values[other]);
            if (L.leq(other, k) && ds.project_point(k, other, v) != ov) ok = false;
            if (L.leq(k, other) && ds.project_point(other, k, ov) != v) ok = false;
          }
          if (ok) {
            cur.values[k] = v;
            choice[depth] = v;
            placed = true;
            break;
          }
        }
        if (placed) {
          ++depth;
          if (depth < fresh.size()) choice[depth] = 0;
          continue;
        }
        if (depth == 0) break;
        choice[depth] = 0;
        --depth;
        cur.values[fresh[depth]] = -1;
        ++choice[depth];
      }
    }
    layer = std::move(next);
    covered = G.members();
  }
  std::vector<Thread> out;
  for (const auto& y : layer) {
    Thread t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(y.values[i]);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ThreadSpaceReport thread_space(const DiscreteSystem& ds, std::uint64_t product_budget) {
  ThreadSpaceReport rep;
  rep.product_bound = product_bound(ds, product_budget);
  if (rep.product_bound > product_budget)
    throw BudgetError("thread_space: product of space sizes " + std::to_string(rep.product_bound) +
                      " exceeds the budget " + std::to_string(product_budget));

  auto oracle = filtration_oracle(ds);
  rep.threads = extension_enumeration(ds);
  rep.oracle_agrees = oracle == rep.threads;
  if (!rep.oracle_agrees)
    rep.failures.push_back("constructive enumeration disagrees with the filtration oracle (" +
                           std::to_string(rep.threads.size()) + " vs " +
                           std::to_string(oracle.size()) + ")");

  const std::size_t n = ds.count();
  const auto& L = ds.index();

  rep.projections_surjective = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> seen(ds.space(i).points.size(), 0);
    for (const auto& t : rep.threads) seen[t[i]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      rep.projections_surjective = false;
      rep.failures.push_back("limit projection onto " + L.id(i) + " is not surjective");
    }
  }

  rep.extended_commutes = true;
  for (const auto& t : rep.threads)
    for (std::size_t a = 0; a < n && rep.extended_commutes; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && L.leq(a, b) && ds.project_point(b, a, t[b]) != t[a]) {
          rep.extended_commutes = false;
          rep.failures.push_back("limit projection fails to commute through " + L.id(b));
          break;
        }

  rep.extended_correct = true;
  for (std::size_t i = 0; i < n && rep.extended_correct; ++i)
    for (std::size_t jj = i + 1; jj < n; ++jj) {
      const std::size_t m = L.meet(i, jj);
      std::set<std::pair<std::uint32_t, std::uint32_t>> realized;
      for (const auto& t : rep.threads) realized.insert({t[i], t[jj]});
      bool bad = false;
      for (std::uint32_t a = 0; a < ds.space(i).points.size() && !bad; ++a)
        for (std::uint32_t b = 0; b < ds.space(jj).points.size(); ++b) {
          if (ds.project_point(i, m, a) != ds.project_point(jj, m, b)) continue;
          if (!realized.count({a, b})) {
            rep.extended_correct = false;
            rep.failures.push_back("no thread through " + ds.space(i).points[a] + " at " + L.id(i) +
                                   " and " + ds.space(jj).points[b] + " at " + L.id(jj));
            bad = true;
            break;
          }
        }
      if (bad) break;
    }

  // Deterministic one-pass extension from singletons; every result must be a
  // genuine thread.
  std::uint64_t point_total = 0;
  for (std::size_t i = 0; i < n; ++i) point_total += ds.space(i).points.size();
  if (point_total <= 512) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t p = 0; p < ds.space(i).points.size(); ++p) {
        PartialThread y = singleton_thread(ds, i, p);
        while (y.domain().size() < n) {
          std::size_t fresh = 0;
          while (y.values[fresh] >= 0) ++fresh;
          y = extend_partial_thread(ds, y, fresh);
        }
        Thread t(n);
        for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<std::uint32_t>(y.values[k]);
        if (!std::binary_search(rep.threads.begin(), rep.threads.end(), t))
          throw DefectError("thread_space: singleton extension produced a non-thread");
        ++rep.singleton_extensions_checked;
      }
  }
  return rep;
}

BoxImageReport box_image(const DiscreteSystem& ds, const std::vector<Thread>& threads,
                         const order::ClosedSet& domain,
                         const std::vector<std::vector<std::uint32_t>>& boxes) {
  const auto& L = ds.index();
  if (domain.empty()) throw ContractError("box_image: domain must be non-empty");
  if (!order::is_closed(L, domain.members())) throw ContractError("box_image: domain not closed");
  if (boxes.size() != domain.size())
    throw ContractError("box_image: need one box per domain member");

  const auto& members = domain.members();
  const std::size_t f = members.size();
  std::vector<std::vector<std::uint8_t>> in_box(f);
  for (std::size_t k = 0; k < f; ++k) {
    in_box[k].assign(ds.space(members[k]).points.size(), 0);
    for (std::uint32_t p : boxes[k]) {
      if (p >= in_box[k].size()) throw ContractError("box_image: box point out of range");
      in_box[k][p] = 1;
    }
  }
  BoxImageReport rep;
  rep.domain = members;
  rep.recipe.resize(f);

  const auto tops = order::top_elements(L, domain);
  std::vector<std::vector<std::uint8_t>> V(f);
  auto pulled_back = [&](std::size_t top) {
    std::vector<std::uint8_t> keep(ds.space(top).points.size(), 1);
    for (std::size_t k = 0; k < f; ++k) {
      if (!L.leq(members[k], top)) continue;
      for (std::uint32_t p = 0; p < keep.size(); ++p)
        if (!in_box[k][ds.project_point(top, members[k], p)]) keep[p] = 0;
    }
    return keep;
  };
  auto push_down = [&](std::size_t top, const std::vector<std::uint8_t>& vtop,
                       std::size_t element) {
    std::vector<std::uint8_t> out(ds.space(element).points.size(), 0);
    for (std::uint32_t p = 0; p < vtop.size(); ++p)
      if (vtop[p]) out[ds.project_point(top, element, p)] = 1;
    return out;
  };

  if (tops.size() == 1) {
    const std::size_t i0 = tops[0];
    auto v0 = pulled_back(i0);
    for (std::size_t k = 0; k < f; ++k) V[k] = push_down(i0, v0, members[k]);
  } else {
    const std::size_t i0 = tops[0], i1 = tops[1];
    const std::size_t m = L.meet(i0, i1);
    auto v0p = pulled_back(i0);
    auto v1p = pulled_back(i1);
    auto m0 = push_down(i0, v0p, m);
    auto m1 = push_down(i1, v1p, m);
    std::vector<std::uint8_t> vm(m0.size());
    for (std::size_t p = 0; p < vm.size(); ++p) vm[p] = m0[p] && m1[p];
    auto v0 = v0p, v1 = v1p;
    for (std::uint32_t p = 0; p < v0.size(); ++p)
      if (v0[p] && !vm[ds.project_point(i0, m, p)]) v0[p] = 0;
    for (std::uint32_t p = 0; p < v1.size(); ++p)
      if (v1[p] && !vm[ds.project_point(i1, m, p)]) v1[p] = 0;
    for (std::size_t k = 0; k < f; ++k) {
      const bool under0 = L.leq(members[k], i0);
      const bool under1 = L.leq(members[k], i1);
      if (under0) V[k] = push_down(i0, v0, members[k]);
      if (under1) {
        auto alt = push_down(i1, v1, members[k]);
        if (under0 && V[k] != alt)
          throw DefectError("box_image: the two top routes disagree at " + L.id(members[k]));
        if (!under0) V[k] = std::move(alt);
      }
      if (!under0 && !under1)
        throw DefectError("box_image: domain member below neither top");
    }
  }

  for (std::size_t k = 0; k < f; ++k)
    for (std::uint32_t p = 0; p < V[k].size(); ++p)
      if (V[k][p]) rep.recipe[k].push_back(p);

  // Brute force over the enumerated threads.
  rep.brute.resize(f);
  std::vector<std::vector<std::uint8_t>> seen(f);
  for (std::size_t k = 0; k < f; ++k) seen[k].assign(ds.space(members[k]).points.size(), 0);
  for (const auto& t : threads) {
    bool inside = true;
    for (std::size_t k = 0; k < f && inside; ++k)
      if (!in_box[k][t[members[k]]]) inside = false;
    if (!inside) continue;
    rep.box_set.push_back(t);
    for (std::size_t k = 0; k < f; ++k) seen[k][t[members[k]]] = 1;
  }
  for (std::size_t k = 0; k < f; ++k)
    for (std::uint32_t p = 0; p < seen[k].size(); ++p)
      if (seen[k][p]) rep.brute[k].push_back(p);

  rep.recipe_matches_brute = rep.recipe == rep.brute;

  std::vector<Thread> via_v;
  for (const auto& t : threads) {
    bool inside = true;
    for (std::size_t k = 0; k < f && inside; ++k)
      if (!V[k][t[members[k]]]) inside = false;
    if (inside) via_v.push_back(t);
  }
  rep.box_identity = via_v == rep.box_set;
  return rep;
}

BridgeReport duality_bridge(const diagram::BASystem& system, const amal::LimitAlgebra& limit,
                            const DiscreteSystem& ds, const std::vector<Thread>& threads) {
  BridgeReport rep;
  const std::size_t n = system.index().size();
  for (std::size_t i = 0; i < n; ++i)
    if (ds.space(i).points != system.algebra(i).atoms())
      throw ContractError("duality_bridge: discrete system is not the dual of the algebra system");

  const auto& L = system.index();
  rep.coherent = true;
  std::set<Thread> image;
  for (std::size_t c = 0; c < limit.algebra.atom_count(); ++c) {
    Thread t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = limit.limit_map[i][c];
    for (std::size_t a = 0; a < n && rep.coherent; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && L.leq(a, b) && ds.project_point(b, a, t[b]) != t[a]) {
          rep.coherent = false;
          rep.failures.push_back("atom " + limit.algebra.atom(c) + " induces an incoherent thread");
          break;
        }
    image.insert(std::move(t));
  }
  rep.injective = image.size() == limit.algebra.atom_count();
  if (!rep.injective) rep.failures.push_back("two limit atoms induce the same thread");
  std::set<Thread> all(threads.begin(), threads.end());
  rep.onto = image == all;
  if (!rep.onto)
    rep.failures.push_back("atom threads and the thread space differ (" +
                           std::to_string(image.size()) + " vs " + std::to_string(all.size()) + ")");
  return rep;
}

}  // namespace amalgam::stone
