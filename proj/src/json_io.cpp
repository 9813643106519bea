#include "knlab/json_io.hpp"

namespace knlab {

Json to_json(const IncidenceSums& s) { return {{"i_st", s.st}, {"i_zt", s.zt}, {"i_zs", s.zs}}; }

Json to_json(const LemmaDiagnostics& d) {
  return {{"lhs_rewrite_z", d.lhs_rewrite_z},
          {"rhs_rewrite_t", d.rhs_rewrite_t},
          {"rhs_rewrite_s", d.rhs_rewrite_s},
          {"identities_hold", d.identities_hold},
          {"contradiction_hypothesis", d.contradiction_hypothesis},
          {"implies_rewrite_t", d.implies_rewrite_t},
          {"implies_rewrite_s", d.implies_rewrite_s},
          {"twice_half_sq_z_plus_ist", d.twice_half_sq_z_plus_ist},
          {"twice_bound", d.twice_bound},
          {"implies_sum_bound", d.implies_sum_bound},
          {"z1_lhs_doubled", d.z1_lhs_doubled},
          {"z1_rhs_doubled", d.z1_rhs_doubled},
          {"lemma3_holds", d.lemma3_holds},
          {"pq", d.pq_product}};
}

Json to_json(const IncidenceReport& r) {
  return {{"n", r.n},
          {"mode", std::string(to_string(r.mode))},
          {"i_st", r.sums.st},
          {"i_zt", r.sums.zt},
          {"i_zs", r.sums.zs},
          {"holds", r.theorem_holds},
          {"p", r.p},
          {"q", r.q},
          {"diagnostics", to_json(r.diagnostics)}};
}

Json to_json(const StructuralReport& r) {
  return {{"P", r.P},
          {"Q", r.Q},
          {"R", r.R},
          {"p_q_disjoint", r.p_q_disjoint},
          {"pq_edges_in_z", r.pq_edges_in_z},
          {"pq_at_most_n_minus_3", r.pq_at_most_n_minus_3},
          {"lemma3", r.lemma3},
          {"sqrt_bound_holds", r.sqrt_bound_holds},
          {"all_facts_hold", r.all_facts_hold()}};
}

Json to_json(const SharpnessReport& r) {
  return {{"n", r.n},
          {"i_st", r.i_st},
          {"i_zs", r.i_zs},
          {"i_zt", r.i_zt},
          {"violates_min_bound", r.violates_min_bound},
          {"matches_closed_forms", r.matches_closed_forms()}};
}

Json to_json(const DegreeProfile& p) { return {{"n", p.n}, {"s", p.s}, {"t", p.t}, {"z", p.z}}; }

DegreeProfile profile_from_json(const Json& j) {
  DegreeProfile p;
  p.n = j.at("n").get<int>();
  p.s = j.at("s").get<std::vector<int>>();
  p.t = j.at("t").get<std::vector<int>>();
  p.z = j.at("z").get<std::vector<int>>();
  if (auto bad = p.local_violation()) throw std::invalid_argument("bad profile: " + *bad);
  return p;
}

Json to_json(const SearchConfig& c) {
  Json j = {{"n", c.n}, {"mode", std::string(to_string(c.mode))}};
  switch (c.mode) {
    case SearchMode::exhaustive:
      j["symmetry"] = c.use_symmetry;
      break;
    case SearchMode::random:
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      break;
    case SearchMode::profile:
      j["p"] = c.p;
      j["q"] = c.q;
      j["prune"] = c.prune;
      j["realize_all"] = c.realize_all;
      break;
  }
  j["allow_large"] = c.allow_large;
  j["checkpoint"] = c.checkpoint_path.empty() ? Json(nullptr) : Json(c.checkpoint_path);
  j["unit_budget"] = c.unit_budget ? Json(*c.unit_budget) : Json(nullptr);
  return j;
}

Json to_json(const SearchCounters& c) {
  return {{"partitions_checked", c.partitions_checked},
          {"classes_checked", c.classes_checked},
          {"raw_equivalent", c.raw_equivalent},
          {"profiles_checked", c.profiles_checked},
          {"profiles_evaluated", c.profiles_evaluated},
          {"subtrees_pruned", c.subtrees_pruned},
          {"relaxation_violations", c.relaxation_violations},
          {"realizable_violations", c.realizable_violations},
          {"realizable_profiles", c.realizable_profiles}};
}

SearchCounters counters_from_json(const Json& j) {
  SearchCounters c;
  c.partitions_checked = j.at("partitions_checked").get<std::uint64_t>();
  c.classes_checked = j.at("classes_checked").get<std::uint64_t>();
  c.raw_equivalent = j.at("raw_equivalent").get<std::uint64_t>();
  c.profiles_checked = j.at("profiles_checked").get<std::uint64_t>();
  c.profiles_evaluated = j.at("profiles_evaluated").get<std::uint64_t>();
  c.subtrees_pruned = j.at("subtrees_pruned").get<std::uint64_t>();
  c.relaxation_violations = j.at("relaxation_violations").get<std::uint64_t>();
  c.realizable_violations = j.at("realizable_violations").get<std::uint64_t>();
  c.realizable_profiles = j.at("realizable_profiles").get<std::uint64_t>();
  return c;
}

Json to_json(const SearchReport& r) {
  Json j = {{"n", r.config.n}, {"mode", std::string(to_string(r.config.mode))}};
  if (r.config.mode == SearchMode::random) j["seed"] = r.config.seed;
  const Json counters = to_json(r.counters);
  for (auto it = counters.begin(); it != counters.end(); ++it) j[it.key()] = it.value();
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(format_partition(v));
  j["violations"] = std::move(violations);
  if (r.config.mode == SearchMode::profile) {
    Json samples = Json::array();
    for (const auto& p : r.relaxation_samples) samples.push_back(to_json(p));
    j["relaxation_samples"] = std::move(samples);
    if (r.config.collect_profiles) {
      Json set = Json::array();
      for (const auto& p : r.realizable_set) set.push_back(to_json(p));
      j["realizable_set"] = std::move(set);
    }
  }
  j["vacuous"] = r.vacuous;
  if (r.vacuous) j["vacuous_reason"] = r.vacuous_reason;
  j["units_done"] = r.units_done;
  j["units_total"] = r.units_total;
  j["complete"] = r.complete;
  j["checkpoint_id"] = r.checkpoint_id;
  return j;
}

Json to_json(const ConnectivityCertificate& c) {
  Json j = {{"k", c.k},
            {"status", c.certified ? "certified" : "refuted"},
            {"all_pairs", c.all_pairs},
            {"pairs_checked", c.pairs.size()}};
  Json pairs = Json::array();
  for (const auto& p : c.pairs) pairs.push_back({{"u", p.u}, {"v", p.v}, {"paths", p.paths}});
  j["pairs"] = std::move(pairs);
  if (c.refutation)
    j["refutation"] = {{"u", c.refutation->u}, {"v", c.refutation->v}, {"separator", c.refutation->separator}};
  else
    j["refutation"] = nullptr;
  return j;
}

Json to_json(const ExpansionReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"size", rec.set_size},
                       {"members", rec.members},
                       {"neighbourhood", rec.neighbourhood},
                       {"threshold", rec.threshold},
                       {"satisfied", rec.satisfied}});
  }
  return {{"graph", r.graph_id},   {"k", r.k},
          {"size_cap", r.size_cap}, {"max_size", r.max_size},
          {"samples", r.samples},   {"seed", r.seed},
          {"coverage", r.coverage}, {"all_satisfied", r.all_satisfied},
          {"records", std::move(records)}};
}

Json to_json(const BridgeReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"size_s", r.size_s},
          {"size_t", r.size_t_},
          {"size_z", r.size_z},
          {"neighbourhood_s", r.neighbourhood_s},
          {"neighbourhood_s_in_t", r.neighbourhood_s_in_t},
          {"neighbourhood_s_in_z", r.neighbourhood_s_in_z},
          {"i_st", r.sums.st},
          {"i_zt", r.sums.zt},
          {"i_zs", r.sums.zs},
          {"min_k_z_s_z", r.min_kz_sz},
          {"expansion_threshold", r.expansion_threshold},
          {"neighbourhood_ge_min_k_z", r.neighbourhood_ge_min_kz},
          {"min_k_z_gt_threshold", r.min_kz_gt_threshold}};
}

}  // namespace knlab
