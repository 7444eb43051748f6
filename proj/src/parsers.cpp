#include "genopt/bench_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace genopt {

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " + message),
      source_(source),
      line_(line) {}

namespace {

/// Whitespace tokenizer that can also hand out whole lines.
class Scanner {
 public:
  Scanner(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::optional<std::string_view> token() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  /// Remainder of the current line (or the next line when at a line start).
  std::optional<std::string_view> line() {
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    last_line_ = line_;
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    std::string_view out = text_.substr(start, pos_ - start);
    if (pos_ < text_.size()) {
      ++pos_;
      ++line_;
    }
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    return out;
  }

  double number(const std::string& what) {
    const int at = line_no();
    auto tok = token();
    if (!tok) fail("unexpected end of input while reading " + what);
    return to_number(*tok, what, at);
  }

  long long integer(const std::string& what) {
    const int at = line_no();
    auto tok = token();
    if (!tok) fail("unexpected end of input while reading " + what);
    const double v = to_number(*tok, what, at);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw ParseError(source_, at, what + ": expected an integer, got '" + std::string(*tok) + "'");
    return static_cast<long long>(v);
  }

  double to_number(std::string_view tok, const std::string& what, int at) const {
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
      throw ParseError(source_, at, what + ": expected a number, got '" + s + "'");
    return v;
  }

  int line_no() {
    skip_space();
    return line_;
  }
  /// Number of the line most recently returned by line().
  int last_line() const { return last_line_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, line_, msg); }
  [[noreturn]] void fail_at(int line, const std::string& msg) const { throw ParseError(source_, line, msg); }
  const std::string& source() const { return source_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int last_line_ = 1;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

bool is_section(const std::string& key) { return key.size() > 8 && key.ends_with("_SECTION"); }

double att_distance(double dx, double dy) {
  const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
  const double t = tsplib_nint(r);
  return t < r ? t + 1 : t;
}

Eigen::MatrixXd coordinate_matrix(const Eigen::MatrixXd& xy, const std::string& type) {
  const Eigen::Index n = xy.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dx = xy(i, 0) - xy(j, 0), dy = xy(i, 1) - xy(j, 1);
      const double e = std::sqrt(dx * dx + dy * dy);
      double v = e;
      if (type == "EUC_2D") v = tsplib_nint(e);
      else if (type == "CEIL_2D") v = std::ceil(e);
      else if (type == "ATT") v = att_distance(dx, dy);
      d(i, j) = d(j, i) = v;
    }
  return d;
}

void read_explicit(Scanner& sc, Eigen::MatrixXd& d, const std::string& format) {
  const Eigen::Index n = d.rows();
  auto cell = [&](Eigen::Index i, Eigen::Index j) {
    const double v = sc.number("edge weight (" + std::to_string(i) + "," + std::to_string(j) + ")");
    d(i, j) = d(j, i) = v;
  };
  if (format == "FULL_MATRIX") {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = sc.number("edge weight (" + std::to_string(i) + "," + std::to_string(j) + ")");
  } else if (format == "UPPER_ROW") {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) cell(i, j);
  } else if (format == "LOWER_ROW") {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) cell(i, j);
  } else if (format == "UPPER_DIAG_ROW") {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) cell(i, j);
  } else if (format == "LOWER_DIAG_ROW") {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) cell(i, j);
  } else {
    sc.fail("unsupported EDGE_WEIGHT_FORMAT " + format);
  }
}

}  // namespace

double tsplib_nint(double x) { return std::floor(x + 0.5); }

InstanceData parse_tsplib_text(std::string_view text, const std::string& source) {
  Scanner sc(text, source);
  std::map<std::string, std::string> header;
  InstanceData out;
  Eigen::MatrixXd xy;
  bool have_weights = false, have_coords = false, have_demands = false;
  long long dim = -1;
  std::vector<long long> depots;

  auto need_dim = [&]() {
    if (dim < 1) sc.fail("DIMENSION must precede the data sections");
    return static_cast<Eigen::Index>(dim);
  };

  while (auto raw = sc.line()) {
    const std::string line = trim(*raw);
    if (line.empty()) continue;
    const int at = sc.last_line();
    const auto colon = line.find(':');
    std::string key = upper(trim(line.substr(0, colon)));
    if (colon == std::string::npos) {
      // Section names may be followed by data on the same line in some files; not supported.
      key = upper(line);
    }
    if (key == "EOF") break;
    if (!is_section(key)) {
      if (colon == std::string::npos) sc.fail_at(at, "expected 'KEY : VALUE', got '" + line + "'");
      const std::string value = trim(line.substr(colon + 1));
      if (value.empty()) sc.fail_at(at, "empty value for " + key);
      header[key] = value;
      if (key == "DIMENSION") {
        char* end = nullptr;
        dim = std::strtoll(value.c_str(), &end, 10);
        if (*end != '\0' || dim < 1 || dim > 100000) sc.fail_at(at, "bad DIMENSION '" + value + "'");
      }
      continue;
    }
    const Eigen::Index n = need_dim();
    if (key == "NODE_COORD_SECTION") {
      xy.resize(n, 2);
      for (Eigen::Index i = 0; i < n; ++i) {
        const int row_line = sc.line_no();
        const long long id = sc.integer("node id");
        if (id != i + 1) sc.fail_at(row_line, "expected node " + std::to_string(i + 1) + ", got " + std::to_string(id));
        xy(i, 0) = sc.number("x coordinate of node " + std::to_string(id));
        xy(i, 1) = sc.number("y coordinate of node " + std::to_string(id));
      }
      have_coords = true;
    } else if (key == "EDGE_WEIGHT_SECTION") {
      const auto fmt = header.count("EDGE_WEIGHT_FORMAT") ? upper(header["EDGE_WEIGHT_FORMAT"]) : "FULL_MATRIX";
      out.distance = Eigen::MatrixXd::Zero(n, n);
      read_explicit(sc, out.distance, fmt);
      have_weights = true;
    } else if (key == "DEMAND_SECTION") {
      out.demands.assign(static_cast<std::size_t>(n), 0.0);
      for (Eigen::Index i = 0; i < n; ++i) {
        const long long id = sc.integer("demand node id");
        if (id != i + 1) sc.fail("expected demand for node " + std::to_string(i + 1));
        out.demands[i] = sc.number("demand of node " + std::to_string(id));
      }
      have_demands = true;
    } else if (key == "DEPOT_SECTION") {
      for (;;) {
        const long long id = sc.integer("depot id");
        if (id == -1) break;
        depots.push_back(id);
      }
    } else if (key == "DISPLAY_DATA_SECTION") {
      for (Eigen::Index i = 0; i < 3 * n; ++i) sc.number("display data");
    } else {
      sc.fail("unsupported section " + key);
    }
  }

  if (dim < 1) sc.fail("missing DIMENSION");
  out.name = header.count("NAME") ? header["NAME"] : source;
  const std::string type = header.count("EDGE_WEIGHT_TYPE") ? upper(header["EDGE_WEIGHT_TYPE"]) : "";
  if (type == "EXPLICIT") {
    if (!have_weights) sc.fail("EXPLICIT instance without EDGE_WEIGHT_SECTION");
  } else if (type == "EUC_2D" || type == "CEIL_2D" || type == "ATT") {
    if (!have_coords) sc.fail("missing NODE_COORD_SECTION");
    out.distance = coordinate_matrix(xy, type);
  } else if (type.empty()) {
    sc.fail("missing EDGE_WEIGHT_TYPE");
  } else {
    sc.fail("unknown EDGE_WEIGHT_TYPE " + type);
  }
  if (have_coords) out.coords = xy;

  const std::string kind = header.count("TYPE") ? upper(header["TYPE"]) : "TSP";
  if (kind == "CVRP") {
    if (!have_demands) sc.fail("CVRP instance without DEMAND_SECTION");
    if (!header.count("CAPACITY")) sc.fail("CVRP instance without CAPACITY");
    out.capacity = std::strtod(header["CAPACITY"].c_str(), nullptr);
    const long long depot = depots.empty() ? 1 : depots.front();
    if (depot < 1 || depot > dim) sc.fail("depot id out of range");
    if (depot != 1) {
      // Move the depot to node 0.
      const Eigen::Index d = static_cast<Eigen::Index>(depot - 1);
      Eigen::PermutationMatrix<Eigen::Dynamic> perm(out.distance.rows());
      perm.setIdentity();
      perm.indices()[0] = static_cast<int>(d);
      perm.indices()[d] = 0;
      out.distance = perm.transpose() * out.distance * perm;
      std::swap(out.demands[0], out.demands[d]);
      if (have_coords) out.coords.row(0).swap(out.coords.row(d));
    }
    if (header.count("VEHICLES")) out.vehicles = std::atoi(header["VEHICLES"].c_str());
  } else if (kind != "TSP") {
    sc.fail("unsupported TYPE " + kind);
  }
  return out;
}

InstanceData parse_qaplib_text(std::string_view text, const std::string& source) {
  Scanner sc(text, source);
  const long long n = sc.integer("problem size");
  if (n < 1 || n > 10000) sc.fail("bad problem size " + std::to_string(n));
  InstanceData out;
  out.name = source;
  out.flow.resize(n, n);
  out.distance.resize(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) out.flow(i, j) = static_cast<double>(sc.integer("flow entry"));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) out.distance(i, j) = static_cast<double>(sc.integer("distance entry"));
  if (!sc.at_end()) sc.fail("trailing data after the distance matrix");
  return out;
}

InstanceData parse_solomon_text(std::string_view text, const std::string& source) {
  Scanner sc(text, source);
  InstanceData out;
  auto next_nonempty = [&]() -> std::string {
    while (auto l = sc.line()) {
      std::string t = trim(*l);
      if (!t.empty()) return t;
    }
    sc.fail("unexpected end of input");
  };
  out.name = next_nonempty();
  if (upper(next_nonempty()) != "VEHICLE") sc.fail("expected VEHICLE block");
  next_nonempty();  // NUMBER CAPACITY
  out.vehicles = static_cast<int>(sc.integer("vehicle count"));
  out.capacity = sc.number("vehicle capacity");
  if (out.vehicles < 1 || !(out.capacity > 0)) sc.fail("vehicle count and capacity must be positive");
  sc.line();
  if (upper(next_nonempty()) != "CUSTOMER") sc.fail("expected CUSTOMER block");
  next_nonempty();  // column titles

  std::vector<std::array<double, 6>> rows;
  while (!sc.at_end()) {
    const int at = sc.line_no();
    const long long id = sc.integer("customer number");
    if (id != static_cast<long long>(rows.size())) sc.fail_at(at, "expected customer " + std::to_string(rows.size()));
    std::array<double, 6> r{};
    static const char* names[] = {"x", "y", "demand", "ready time", "due date", "service time"};
    for (int k = 0; k < 6; ++k) r[k] = sc.number(std::string(names[k]) + " of customer " + std::to_string(id));
    rows.push_back(r);
  }
  if (rows.size() < 2) sc.fail("need a depot row and at least one customer");
  const auto n = static_cast<Eigen::Index>(rows.size());
  out.coords.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.coords(i, 0) = rows[i][0];
    out.coords(i, 1) = rows[i][1];
    out.demands.push_back(rows[i][2]);
    out.ready.push_back(rows[i][3]);
    out.due.push_back(rows[i][4]);
    out.service.push_back(rows[i][5]);
  }
  out.distance = coordinate_matrix(out.coords, "EXACT");
  return out;
}

InstanceData parse_orlib_jsp_text(std::string_view text, const std::string& source) {
  Scanner sc(text, source);
  // Skip free-text lines until the "jobs machines" line.
  long long jobs = -1, machines = -1;
  int header_line = 0;
  while (auto raw = sc.line()) {
    const std::string line = trim(*raw);
    if (line.empty() || line[0] == '#' || line[0] == '+') continue;
    std::istringstream in(line);
    long long a = 0, b = 0;
    std::string rest;
    if ((in >> a >> b) && !(in >> rest)) {
      jobs = a;
      machines = b;
      header_line = sc.last_line();
      break;
    }
  }
  if (jobs < 0) sc.fail("missing 'jobs machines' line");
  if (jobs < 1 || machines < 1 || jobs > 10000 || machines > 10000) sc.fail_at(header_line, "bad instance size");
  InstanceData out;
  out.name = source;
  out.num_machines = static_cast<int>(machines);
  out.machines.resize(jobs, machines);
  out.durations.resize(jobs, machines);
  for (long long j = 0; j < jobs; ++j)
    for (long long k = 0; k < machines; ++k) {
      const int at = sc.line_no();
      const long long m = sc.integer("machine of job " + std::to_string(j));
      if (m < 0 || m >= machines) sc.fail_at(at, "machine index " + std::to_string(m) + " out of range");
      const long long d = sc.integer("duration of job " + std::to_string(j));
      if (d < 0) sc.fail_at(at, "negative duration");
      out.machines(j, k) = static_cast<int>(m);
      out.durations(j, k) = static_cast<int>(d);
    }
  return out;
}

InstanceData parse_knapsack_text(std::string_view text, const std::string& source) {
  Scanner sc(text, source);
  const long long n = sc.integer("item count");
  if (n < 1 || n > 1000000) sc.fail("bad item count");
  InstanceData out;
  out.name = source;
  out.capacity = sc.number("capacity");
  for (long long i = 0; i < n; ++i) {
    out.values.push_back(sc.number("value of item " + std::to_string(i)));
    out.weights.push_back(sc.number("weight of item " + std::to_string(i)));
  }
  if (!sc.at_end()) sc.fail("trailing data after the item list");
  return out;
}

namespace {

using nlohmann::json;

Eigen::MatrixXd json_matrix(const json& j, const std::string& key) {
  if (!j.is_array()) throw std::invalid_argument(key + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw std::invalid_argument(key + ": row " + std::to_string(r) + " has the wrong length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Eigen::MatrixXi json_int_matrix(const json& j, const std::string& key) {
  const Eigen::MatrixXd m = json_matrix(j, key);
  if ((m.array() != m.array().floor()).any()) throw std::invalid_argument(key + " must hold integers");
  return m.cast<int>();
}

ComparisonMode json_comparison(const json& c) {
  const std::string mode = c.value("mode", "weighted");
  if (mode == "weighted") return WeightedMode{c.at("weights").get<std::vector<double>>()};
  if (mode == "lexicographic") {
    LexicographicMode lex;
    lex.priority_order = c.at("priority").get<std::vector<int>>();
    lex.tolerances = c.value("tolerances", std::vector<double>(lex.priority_order.size(), 0.0));
    return lex;
  }
  throw std::invalid_argument("comparison mode must be 'weighted' or 'lexicographic'");
}

}  // namespace

LoadedInstance parse_json_instance(std::string_view text, const std::string& source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
    throw ParseError(source, line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(source, 1, "instance document must be a JSON object");

  LoadedInstance li;
  std::string key;
  try {
    auto& d = li.data;
    auto has = [&](const char* k) {
      key = k;
      return j.contains(k);
    };
    if (has("problem")) li.problem = j["problem"].get<std::string>();
    d.name = has("name") ? j["name"].get<std::string>() : source;
    if (has("distance")) d.distance = json_matrix(j["distance"], key);
    if (has("flow")) d.flow = json_matrix(j["flow"], key);
    if (has("cost")) d.cost = json_matrix(j["cost"], key);
    if (has("coords")) {
      d.coords = json_matrix(j["coords"], key);
      if (d.coords.cols() != 2) throw std::invalid_argument("coords must be (x, y) pairs");
      if (d.distance.size() == 0) {
        const bool round = j.value("round_distances", false);
        d.distance = coordinate_matrix(d.coords, round ? "EUC_2D" : "EXACT");
      }
    }
    if (has("weights")) d.weights = j["weights"].get<std::vector<double>>();
    if (has("values")) d.values = j["values"].get<std::vector<double>>();
    if (has("capacity")) d.capacity = j["capacity"].get<double>();
    if (has("demands")) d.demands = j["demands"].get<std::vector<double>>();
    if (has("ready")) d.ready = j["ready"].get<std::vector<double>>();
    if (has("due")) d.due = j["due"].get<std::vector<double>>();
    if (has("service")) d.service = j["service"].get<std::vector<double>>();
    if (has("priorities")) d.priorities = j["priorities"].get<std::vector<int>>();
    if (has("vehicles")) d.vehicles = j["vehicles"].get<int>();
    if (has("edges")) d.edges = j["edges"].get<std::vector<std::pair<int, int>>>();
    if (has("num_vertices")) d.num_vertices = j["num_vertices"].get<int>();
    if (has("num_colors")) d.num_colors = j["num_colors"].get<int>();
    if (has("num_bins")) d.num_bins = j["num_bins"].get<int>();
    if (has("num_machines")) d.num_machines = j["num_machines"].get<int>();
    if (has("machines")) d.machines = json_int_matrix(j["machines"], key);
    if (has("durations")) d.durations = json_int_matrix(j["durations"], key);
    if (has("coverage")) d.coverage = j["coverage"].get<std::vector<double>>();
    if (has("best_known")) li.best_known = j["best_known"].get<double>();
    if (has("options")) {
      const auto& o = j["options"];
      li.options.vehicle_objective = o.value("vehicle_objective", false);
      if (o.contains("comparison")) li.options.comparison = json_comparison(o["comparison"]);
    }
  } catch (const std::exception& e) {
    throw ParseError(source, 0, "field '" + key + "': " + e.what());
  }
  return li;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedInstance load_instance(const std::string& path, const std::string& problem_hint) {
  const std::string text = read_file(path);
  const bool json_ext = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  LoadedInstance li;
  const std::string& p = problem_hint;
  if (json_ext) {
    li = parse_json_instance(text, path);
  } else if (p == "tsp" || p == "cvrp" || p == "vrp_priority" || p == "vrp_nonlinear") {
    li.data = parse_tsplib_text(text, path);
  } else if (p == "qap") {
    li.data = parse_qaplib_text(text, path);
  } else if (p == "vrptw") {
    li.data = parse_solomon_text(text, path);
  } else if (p == "jsp_int" || p == "jsp_perm") {
    li.data = parse_orlib_jsp_text(text, path);
  } else if (p == "knapsack") {
    li.data = parse_knapsack_text(text, path);
  } else {
    li = parse_json_instance(text, path);
  }
  if (li.problem.empty()) li.problem = problem_hint;
  return li;
}

}  // namespace genopt
