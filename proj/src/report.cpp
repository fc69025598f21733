#include "twistkit/report.hpp"

#include <algorithm>
#include <sstream>

namespace twistkit::report {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Info:
      return "info";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Json CheckResult::to_json() const {
  Json j{{"check_id", id},
         {"statement", statement},
         {"status", status_name(status)},
         {"samples", samples}};
  if (!counterexample.empty()) j["counterexample"] = counterexample;
  if (!data.is_null()) j["data"] = data;
  return j;
}

void Collector::pass(const std::string& id, const std::string& statement,
                     long samples) {
  add({id, statement, Status::Pass, samples, "", Json()});
}

void Collector::fail(const std::string& id, const std::string& statement,
                     long samples, const std::string& counterexample) {
  add({id, statement, Status::Fail, samples, counterexample, Json()});
}

void Collector::check(bool ok, const std::string& id,
                      const std::string& statement, long samples,
                      const std::string& counterexample) {
  if (ok)
    pass(id, statement, samples);
  else
    fail(id, statement, samples, counterexample);
}

void Collector::info(const std::string& id, const std::string& statement,
                     Json data) {
  add({id, statement, Status::Info, 0, "", std::move(data)});
}

void Collector::inconclusive(const std::string& id,
                             const std::string& statement,
                             const std::string& note) {
  add({id, statement, Status::Inconclusive, 0, note, Json()});
}

void Collector::merge(Collector&& other) {
  for (auto& r : other.results_) results_.push_back(std::move(r));
  other.results_.clear();
}

Json Collector::to_json(const Json& config) const {
  std::vector<const CheckResult*> sorted;
  for (auto& r : results_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->id < b->id; });
  Json checks = Json::array();
  for (auto* r : sorted) checks.push_back(r->to_json());
  long fails = fail_count();
  return Json{{"config", config},
              {"summary",
               {{"total", results_.size()},
                {"failed", fails},
                {"ok", fails == 0}}},
              {"checks", checks}};
}

std::string Collector::to_markdown() const {
  std::vector<const CheckResult*> sorted;
  for (auto& r : results_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->id < b->id; });
  std::ostringstream os;
  os << "| check | statement | status | samples |\n";
  os << "|---|---|---|---|\n";
  for (auto* r : sorted) {
    os << "| " << r->id << " | " << r->statement << " | "
       << status_name(r->status) << " | " << r->samples << " |\n";
  }
  return os.str();
}

bool Collector::all_ok(bool inconclusive_allowed) const {
  for (auto& r : results_) {
    if (r.status == Status::Fail) return false;
    if (r.status == Status::Inconclusive && !inconclusive_allowed) return false;
  }
  return true;
}

long Collector::fail_count() const {
  long n = 0;
  for (auto& r : results_)
    if (r.status == Status::Fail) ++n;
  return n;
}

}  // namespace twistkit::report
