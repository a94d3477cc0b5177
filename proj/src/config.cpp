#include "segsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

namespace segsim {

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                              : what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text, std::size_t line) {
  auto whole = [&](std::string_view t, double& out) {
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc() && res.ptr == t.data() + t.size() &&
           !t.empty();
  };
  double value = 0.0;
  if (whole(text, value)) return value;
  // Rationals such as 2/3.
  const auto slash = text.find('/');
  double num = 0.0, den = 0.0;
  if (slash != std::string_view::npos &&
      whole(trim(text.substr(0, slash)), num) &&
      whole(trim(text.substr(slash + 1)), den) && den != 0.0)
    return num / den;
  throw ConfigError("expected a real number, got '" + std::string(text) + "'",
                    line);
}

struct KindName {
  ScenarioKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ScenarioKind::Nash, "nash"},
    {ScenarioKind::Protocol1, "protocol1"},
    {ScenarioKind::Protocol2, "protocol2"},
    {ScenarioKind::Protocol3, "protocol3"},
    {ScenarioKind::SweepC, "sweep_c"},
    {ScenarioKind::Opinion, "opinion"},
    {ScenarioKind::BenchArm, "bench_arm"},
    {ScenarioKind::VerifyMyopic, "verify_myopic"},
};

const std::vector<ParamSchema>& schema_table(ScenarioKind kind) {
  using T = ParamType;
  static const std::map<ScenarioKind, std::vector<ParamSchema>> table = {
      {ScenarioKind::Nash,
       {{"c", T::Real, "0.8", "acceptance probability"}}},
      {ScenarioKind::Protocol1,
       {{"n", T::Int, "20", "users per community"},
        {"horizon", T::Int, "20", "time steps"}}},
      {ScenarioKind::Protocol2,
       {{"n", T::Int, "20", "users per community"},
        {"horizon", T::Int, "20", "time steps"},
        {"c", T::Real, "0.8", "acceptance probability"}}},
      {ScenarioKind::Protocol3,
       {{"n", T::Int, "20", "users per community"},
        {"horizon", T::Int, "1000", "time steps"},
        {"states", T::RealList, "0.6,0.8,1.0", "acceptance probabilities"},
        {"transitions", T::Matrix, "0,0.5,0.5;0.5,0,0.5;0.5,0.5,0",
         "row-stochastic transition matrix"},
        {"holding_time", T::Int, "100", "steps between jumps"},
        {"initial_state", T::Int, "1", "index of C at t = 0"}}},
      {ScenarioKind::SweepC,
       {{"n", T::Int, "20", "users per community"},
        {"horizon", T::Int, "20", "time steps per run"},
        {"c_values", T::RealList, "0.6,0.7,0.8,0.9,1.0",
         "acceptance probabilities"},
        {"seeds", T::Int, "50", "runs per acceptance probability"},
        {"tail_fraction", T::Real, "0.5", "share of each trace averaged"}}},
      {ScenarioKind::Opinion,
       {{"n_agents", T::Int, "100", "agents"},
        {"radius", T::Real, "0.175", "geometric graph radius"},
        {"alpha", T::Real, "0.05", "learning rate"},
        {"epsilon", T::Real, "0.1", "exploration rate"},
        {"c", T::Real, "0.9", "acceptance probability"},
        {"with_arm", T::Bool, "true", "recommendation reward on"},
        {"materialize", T::Bool, "false",
         "add accepted recommendations as edges (not part of the reward model)"},
        {"horizon", T::Int, "200000", "micro-steps"},
        {"record_every", T::Int, "100", "micro-steps between records"}}},
      {ScenarioKind::BenchArm,
       {{"sizes", T::RealList, "100,200,400,800", "users per community"},
        {"c", T::Real, "0.8", "acceptance probability"},
        {"batches", T::Int, "5", "timing batches per size"}}},
      {ScenarioKind::VerifyMyopic,
       {{"states", T::RealList, "0.6,0.9", "acceptance probabilities"},
        {"transitions", T::Matrix, "0.5,0.5;0.5,0.5",
         "row-stochastic transition matrix"},
        {"holding_time", T::Int, "1", "steps between jumps"},
        {"initial_state", T::Int, "0", "index of C at t = 0"},
        {"gamma", T::Real, "0.9", "discount factor"},
        {"grid", T::Int, "201", "own-action grid size"},
        {"horizon", T::Int, "50", "stages"}}},
  };
  return table.at(kind);
}

const ParamSchema* find_key(ScenarioKind kind, const std::string& key) {
  for (const ParamSchema& p : schema_table(kind))
    if (p.key == key) return &p;
  return nullptr;
}

}  // namespace

std::optional<ScenarioKind> kind_from_string(std::string_view s) {
  std::string norm(s);
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (const auto& [kind, name] : kKindNames)
    if (norm == name) return kind;
  return std::nullopt;
}

std::string to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::vector<ScenarioKind> all_kinds() {
  std::vector<ScenarioKind> kinds;
  for (const auto& kn : kKindNames) kinds.push_back(kn.kind);
  return kinds;
}

const std::vector<ParamSchema>& schema(ScenarioKind kind) {
  return schema_table(kind);
}

ParamValue parse_value(ParamType type, std::string_view text,
                       std::size_t line) {
  text = trim(text);
  switch (type) {
    case ParamType::Int: {
      std::int64_t v = 0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
          text.empty())
        throw ConfigError("expected an integer, got '" + std::string(text) + "'",
                          line);
      return v;
    }
    case ParamType::Real:
      return parse_real(text, line);
    case ParamType::Bool:
      if (text == "true" || text == "yes" || text == "1") return true;
      if (text == "false" || text == "no" || text == "0") return false;
      throw ConfigError("expected true or false, got '" + std::string(text) + "'",
                        line);
    case ParamType::Text:
      return std::string(text);
    case ParamType::RealList: {
      std::vector<double> values;
      for (std::string_view part : split(text, ','))
        values.push_back(parse_real(part, line));
      return values;
    }
    case ParamType::Matrix: {
      std::vector<std::vector<double>> rows;
      for (std::string_view row : split(text, ';')) {
        rows.emplace_back();
        for (std::string_view part : split(row, ','))
          rows.back().push_back(parse_real(part, line));
        if (rows.back().size() != rows.front().size())
          throw ConfigError("matrix rows have different lengths", line);
      }
      Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows.front().size()));
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      return m;
    }
  }
  throw ConfigError("unknown parameter type", line);
}

namespace {

template <typename T>
const T& get(const ScenarioSpec& spec, const std::string& key) {
  const auto it = spec.parameters.find(key);
  if (it == spec.parameters.end())
    throw ConfigError("scenario '" + spec.name + "' has no parameter '" + key +
                      "'");
  const T* v = std::get_if<T>(&it->second);
  if (!v)
    throw ConfigError("parameter '" + key + "' of scenario '" + spec.name +
                      "' has another type");
  return *v;
}

}  // namespace

std::int64_t ScenarioSpec::integer(const std::string& key) const {
  return get<std::int64_t>(*this, key);
}

std::size_t ScenarioSpec::count(const std::string& key) const {
  const std::int64_t v = integer(key);
  if (v < 0)
    throw ConfigError("parameter '" + key + "' must not be negative");
  return static_cast<std::size_t>(v);
}

double ScenarioSpec::real(const std::string& key) const {
  return get<double>(*this, key);
}

bool ScenarioSpec::flag(const std::string& key) const {
  return get<bool>(*this, key);
}

const std::vector<double>& ScenarioSpec::list(const std::string& key) const {
  return get<std::vector<double>>(*this, key);
}

const Eigen::MatrixXd& ScenarioSpec::matrix(const std::string& key) const {
  return get<Eigen::MatrixXd>(*this, key);
}

ScenarioSpec default_spec(ScenarioKind kind, std::string name) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.output_path = name;
  spec.name = std::move(name);
  for (const ParamSchema& p : schema_table(kind))
    spec.parameters[p.key] = parse_value(p.type, p.default_text);
  return spec;
}

void set_parameter(ScenarioSpec& spec, const std::string& key,
                   std::string_view value, std::size_t line) {
  if (key == "seed") {
    const auto v = std::get<std::int64_t>(parse_value(ParamType::Int, value, line));
    if (v < 0) throw ConfigError("seed must not be negative", line);
    spec.seed = static_cast<std::uint64_t>(v);
    return;
  }
  if (key == "output") {
    spec.output_path = std::string(trim(value));
    if (spec.output_path.empty())
      throw ConfigError("output must not be empty", line);
    return;
  }
  const ParamSchema* p = find_key(spec.kind, key);
  if (!p)
    throw ConfigError("unknown key '" + key + "' for kind " +
                          to_string(spec.kind),
                      line);
  spec.parameters[key] = parse_value(p->type, value, line);
}

std::vector<ScenarioSpec> parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line;
  };
  struct Section {
    std::string name;
    std::size_t line;
    std::vector<Entry> entries;
  };

  std::vector<Section> sections;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      constexpr std::string_view kPrefix = "scenario";
      if (inner.substr(0, kPrefix.size()) != kPrefix)
        throw ConfigError("section header must read [scenario <name>]",
                          line_no);
      std::string_view name = trim(inner.substr(kPrefix.size()));
      if (name.empty() || name.find_first_of(" \t") != std::string_view::npos ||
          inner.size() == kPrefix.size() ||
          (inner[kPrefix.size()] != ' ' && inner[kPrefix.size()] != '\t'))
        throw ConfigError("scenario name must be one word", line_no);
      for (const Section& s : sections)
        if (s.name == name)
          throw ConfigError("duplicate scenario '" + std::string(name) + "'",
                            line_no);
      sections.push_back({std::string(name), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no);
    if (sections.empty())
      throw ConfigError("key outside of a [scenario <name>] section", line_no);
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    for (const Entry& e : sections.back().entries)
      if (e.key == key)
        throw ConfigError("duplicate key '" + key + "'", line_no);
    sections.back().entries.push_back(
        {std::move(key), std::string(trim(line.substr(eq + 1))), line_no});
  }

  std::vector<ScenarioSpec> specs;
  for (const Section& s : sections) {
    const auto kind_entry =
        std::find_if(s.entries.begin(), s.entries.end(),
                     [](const Entry& e) { return e.key == "kind"; });
    if (kind_entry == s.entries.end())
      throw ConfigError("scenario '" + s.name + "' is missing required key 'kind'",
                        s.line);
    const auto kind = kind_from_string(kind_entry->value);
    if (!kind)
      throw ConfigError("unknown kind '" + kind_entry->value + "'",
                        kind_entry->line);
    ScenarioSpec spec = default_spec(*kind, s.name);
    for (const Entry& e : s.entries)
      if (e.key != "kind") set_parameter(spec, e.key, e.value, e.line);
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace segsim
