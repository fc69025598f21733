#pragma once

#include <string>
#include <vector>

#include "twistkit/jsonio.hpp"

namespace twistkit::report {

enum class Status { Pass, Fail, Info, Inconclusive };

struct CheckResult {
  std::string id;         // stable check identifier, e.g. "witt.fv_is_p.p2"
  std::string statement;  // human-readable identity being checked
  Status status = Status::Pass;
  long samples = 0;
  std::string counterexample;  // empty unless failed
  Json data;                   // optional structured payload

  Json to_json() const;
};

class Collector {
 public:
  void add(CheckResult r) { results_.push_back(std::move(r)); }
  void pass(const std::string& id, const std::string& statement, long samples);
  void fail(const std::string& id, const std::string& statement, long samples,
            const std::string& counterexample);
  void check(bool ok, const std::string& id, const std::string& statement,
             long samples, const std::string& counterexample = "");
  void info(const std::string& id, const std::string& statement, Json data);
  void inconclusive(const std::string& id, const std::string& statement,
                    const std::string& note);

  const std::vector<CheckResult>& results() const { return results_; }
  void merge(Collector&& other);
  // Order-normalized (sorted by id) report; byte-identical for identical
  // inputs regardless of execution schedule.
  Json to_json(const Json& config) const;
  std::string to_markdown() const;
  bool all_ok(bool inconclusive_allowed) const;
  long fail_count() const;

 private:
  std::vector<CheckResult> results_;
};

std::string status_name(Status s);

}  // namespace twistkit::report
