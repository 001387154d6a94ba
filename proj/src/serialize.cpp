#include "esc/serialize.hpp"

#include <map>

namespace esc {

Json to_json(const Redex& r) {
  Json j{{"kind", rule_name(r.kind)}, {"cut_path", r.cut_path}};
  j["occ_path"] = r.occ_path ? Json(*r.occ_path) : Json(nullptr);
  return j;
}

Json to_json(const StepRecord& s) {
  Json j = to_json(s.redex);
  j["index"] = s.index;
  j["size_after"] = s.size_after;
  j["measure_after"] = s.measure_after ? Json(*s.measure_after) : Json(nullptr);
  if (s.duplicated) {
    j["duplicated_value_size"] = s.duplicated->size;
    if (s.duplicated->copies != 1) j["copies"] = s.duplicated->copies;
  }
  if (s.erased) j["erased_value_size"] = *s.erased;
  return j;
}

Json to_json(const Report& r) {
  return Json{{"check", r.check}, {"ok", r.ok}, {"inconclusive", r.inconclusive}, {"cases", r.cases},
              {"detail", r.detail}};
}

Json to_json(const SubTermReport& r) {
  Json v = Json::array();
  for (auto& x : r.violations) v.push_back({{"step", x.step}, {"what", x.what}, {"size", x.size}});
  return Json{{"initial_size", r.initial_size},
              {"max_bad_value_size", r.max_bad_value_size},
              {"max_duplicated_size", r.max_duplicated_size},
              {"max_erased_size", r.max_erased_size},
              {"work", r.work},
              {"ok", r.ok()},
              {"violations", v}};
}

Json to_json(const SnResult& r) {
  Json j{{"kind", sn_kind_name(r.kind)}, {"longest", r.longest}, {"shortest", r.shortest}};
  if (!r.cycle.empty()) {
    Json c = Json::array();
    for (auto& t : r.cycle) c.push_back(print(t));
    j["cycle"] = c;
  }
  return j;
}

Json trace_header(const Trace& t) {
  return Json{{"initial_term", print(t.initial)}, {"strategy", strategy_name(t.strategy.kind)},
              {"seed", t.strategy.seed}};
}

void write_trace_jsonl(std::ostream& out, const Trace& t) {
  out << trace_header(t).dump() << '\n';
  for (auto& s : t.steps) out << to_json(s).dump() << '\n';
}

Json trace_summary(const Trace& t) {
  std::map<std::string, std::size_t> kinds;
  std::size_t max_dup = 0;
  Json traj = Json::array();
  for (auto& s : t.steps) {
    ++kinds[rule_name(s.redex.kind)];
    if (s.duplicated) max_dup = std::max(max_dup, s.duplicated->size);
    traj.push_back(s.measure_after ? Json(*s.measure_after) : Json(nullptr));
  }
  return Json{{"strategy", strategy_name(t.strategy.kind)},
              {"steps", t.steps.size()},
              {"steps_by_kind", kinds},
              {"verdict", verdict_name(t.verdict)},
              {"final_size", size(t.final)},
              {"max_duplicated_size", max_dup},
              {"measure_trajectory", traj},
              {"cut_free", is_cut_free(t.final)},
              {"final_term", print(t.final)}};
}

} // namespace esc
