#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chevlab/verify.hpp"

namespace chevlab {

namespace {

using CheckFn = CheckRecord (*)(const Scenario&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"closure", check_closure},   {"steinberg", check_steinberg},
      {"normal", check_normal_structure}, {"iso", check_iso_invariants},
      {"tcap", check_tcap},         {"product", check_product_decomposition},
      {"master", check_master},     {"master_bg", check_master_bg},
      {"biinterp", check_biinterp}, {"aut", aut_stabilizer_growth}};
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep))
    if (auto t = trim(part); !t.empty()) out.push_back(t);
  return out;
}

template <class T>
T parse_number(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    if (x < 0 && std::is_unsigned_v<T>) throw std::invalid_argument(v);
    return static_cast<T>(x);
  } catch (const std::logic_error&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'", line);
  }
}

bool parse_bool(const std::string& v, std::size_t line, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'", line);
}

void set_field(Scenario& s, const std::string& key, const std::string& v, std::size_t line) {
  if (key == "checks") {
    s.checks = split(v, ',');
    for (const auto& c : s.checks) {
      const auto& names = check_names();
      if (std::find(names.begin(), names.end(), c) == names.end()) throw ConfigError("unknown check '" + c + "'", line);
    }
  } else if (key == "system") {
    try {
      RootSystem::parse(v);
    } catch (const RingError& e) {
      throw ConfigError(e.what(), line);
    }
    s.system = v;
  } else if (key == "lattice") {
    try {
      s.lattice = parse_lattice(v);
    } catch (const RingError& e) {
      throw ConfigError(e.what(), line);
    }
  } else if (key == "ring") {
    try {
      parse_ring_spec(v);
    } catch (const RingError& e) {
      throw ConfigError(e.what(), line);
    }
    s.ring = v;
  } else if (key == "rings") {
    s.rings = split(v, ';');
  } else if (key == "m") {
    s.m = parse_number<long>(v, line, key);
  } else if (key == "n") {
    s.n = parse_number<int>(v, line, key);
  } else if (key == "k") {
    s.k = parse_number<int>(v, line, key);
  } else if (key == "samples") {
    s.samples = parse_number<std::size_t>(v, line, key);
  } else if (key == "closure_cap") {
    s.closure_cap = parse_number<std::size_t>(v, line, key);
  } else if (key == "normal_bound") {
    s.normal_bound = parse_number<std::size_t>(v, line, key);
  } else if (key == "order") {
    s.expected_order = parse_number<std::size_t>(v, line, key);
  } else if (key == "require_good") {
    s.require_good = parse_bool(v, line, key);
  } else if (key == "expect") {
    if (v != "pass" && v != "fail") throw ConfigError("expect must be pass or fail", line);
    s.expect_fail = v == "fail";
  } else if (key == "twist") {
    if (!v.empty() && v != "frobenius") throw ConfigError("unknown twist '" + v + "'", line);
    s.twist = v;
  } else if (key == "fault") {
    if (!v.empty() && v != "inject") throw ConfigError("unknown fault '" + v + "'", line);
    s.fault = v;
  } else {
    throw ConfigError("unknown key '" + key + "'", line);
  }
}

}  // namespace

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const CheckRecord& r) { return r.verdict == v; }));
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckRecord run_check(const std::string& name, const Scenario& s) {
  auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
  if (it == registry().end()) throw ConfigError("unknown check '" + name + "'", 0);
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec;
  try {
    rec = it->second(s);
  } catch (const BudgetExceeded& e) {
    rec = {};
    rec.verdict = Verdict::Unknown;
    rec.witness = std::string("budget: ") + e.what();
    rec.details["partial"] = std::to_string(e.partial());
  } catch (const std::exception& e) {
    rec = {};
    rec.verdict = Verdict::Fail;
    rec.witness = std::string("error: ") + e.what();
  }
  rec.check = name;
  rec.scenario = s.name;
  rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

Report run_suite(const std::vector<Scenario>& scenarios) {
  std::vector<std::pair<std::size_t, std::string>> jobs;
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    for (const auto& c : scenarios[i].checks) jobs.emplace_back(i, c);
  Report report;
  report.records.resize(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < jobs.size(); ++j)
    report.records[j] = run_check(jobs[j].second, scenarios[jobs[j].first]);
  return report;
}

std::vector<Scenario> parse_config(const std::string& text) {
  std::vector<Scenario> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string l = trim(raw.substr(0, raw.find('#')));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw ConfigError("unterminated section header", line);
      auto words = split(l.substr(1, l.size() - 2), ' ');
      if (words.size() != 2 || words[0] != "scenario") throw ConfigError("expected [scenario NAME]", line);
      for (const auto& s : out)
        if (s.name == words[1]) throw ConfigError("duplicate scenario '" + words[1] + "'", line);
      out.emplace_back();
      out.back().name = words[1];
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    if (out.empty()) throw ConfigError("setting outside a scenario section", line);
    set_field(out.back(), trim(l.substr(0, eq)), trim(l.substr(eq + 1)), line);
  }
  for (const auto& s : out)
    if (s.checks.empty()) throw ConfigError("scenario '" + s.name + "' has no checks", line);
  return out;
}

std::vector<Scenario> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_jsonl(const Report& r, bool with_timing) {
  std::string out;
  for (const auto& rec : r.records) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["check"] = rec.check;
    j["scenario"] = rec.scenario;
    j["verdict"] = verdict_name(rec.verdict);
    if (!rec.witness.empty()) j["witness"] = rec.witness;
    if (with_timing) j["millis"] = std::round(rec.millis * 1000.0) / 1000.0;
    if (!rec.details.empty()) j["details"] = rec.details;
    out += j.dump() + "\n";
  }
  return out;
}

std::string summary_table(const Report& r) {
  std::size_t wc = 5, ws = 8;
  for (const auto& rec : r.records) {
    wc = std::max(wc, rec.check.size());
    ws = std::max(ws, rec.scenario.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(ws)) << "scenario" << "  " << std::setw(static_cast<int>(wc)) << "check"
      << "  " << std::setw(8) << "verdict" << std::right << std::setw(10) << "ms" << "  witness\n";
  for (const auto& rec : r.records)
    out << std::left << std::setw(static_cast<int>(ws)) << rec.scenario << "  " << std::setw(static_cast<int>(wc))
        << rec.check << "  " << std::setw(8) << verdict_name(rec.verdict) << std::right << std::setw(10) << std::fixed
        << std::setprecision(1) << rec.millis << "  " << rec.witness << "\n";
  out << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::Fail) << " fail, " << r.count(Verdict::Unknown)
      << " unknown\n";
  return out.str();
}

}  // namespace chevlab
