#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoinv {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckParams {
  std::uint32_t q = 3;
  int m = 2;
  std::uint32_t max_degree = 0;  // 0: the check's default
  bool heavy = false;
};

enum class Status { pass, fail, skip, error };
std::string to_string(Status s);

struct CheckReport {
  std::string name;
  std::string anchor;
  CheckParams params;
  Status status = Status::pass;
  std::string witness;  // failure witness or skip reason
  std::vector<std::string> notes;
  double seconds = 0;
};

struct CheckInfo {
  std::string name;
  std::string anchor;
  bool default_tier;  // part of "all" without --heavy
};

const std::vector<CheckInfo>& registry();
// throws UsageError on even or unsupported q, bad m, unknown name
CheckReport run_check(const std::string& name, const CheckParams& params);
// filter: "all", "default", "heavy", a check name, a prefix ending in '*' or '_', or a comma list of these
std::vector<std::string> select_checks(const std::string& filter, bool heavy);
std::vector<CheckReport> run_suite(const std::string& filter, const CheckParams& params,
                                   const std::function<void(const CheckReport&)>& on_report = {});

std::string report_json(const std::vector<CheckReport>& reports, int indent = 2);
// 0 all pass or skip, 1 any fail, 2 any error
int exit_code(const std::vector<CheckReport>& reports);

void validate_params(const CheckParams& p);

}  // namespace orthoinv
