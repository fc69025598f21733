#pragma once

#include <cstdint>

#include "twistkit/report.hpp"

namespace twistkit::cli {

struct SuiteConfig {
  std::vector<long> primes = {2, 3};
  long levels = 3;
  long gns_range = 12;
  long samples = 20;
  std::uint64_t seed = 1;
  long series_order = 64;
  long padic_digits = 16;
  std::string goldens_dir = "goldens";
  long threads = 1;
  // Optional narrowing of suite scope.
  std::string model;     // "q-de-rham" | "eisenstein" | "" (both)
  std::string gns_spec;  // "multiplicative" | "hyperbolic" | "additive" | ""
  long m_only = -1;      // sandwich: restrict to one (m, n)
  long n_only = -1;

  Json to_json() const;
  static SuiteConfig from_json(const Json& j);
};

void run_witt_suite(const SuiteConfig& cfg, report::Collector& out);
void run_reciprocity_suite(const SuiteConfig& cfg, report::Collector& out);
void run_prism_suite(const SuiteConfig& cfg, report::Collector& out);
void run_sandwich_suite(const SuiteConfig& cfg, report::Collector& out);
void run_gns_suite(const SuiteConfig& cfg, report::Collector& out);
void run_suite(const std::string& name, const SuiteConfig& cfg,
               report::Collector& out);

// The reciprocity indices exercised by the verification suites.
const std::vector<std::pair<long, long>>& sum_rule_indices();

}  // namespace twistkit::cli
