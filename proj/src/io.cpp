#include "psdspar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace psdspar::io {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line) + ": " + msg);
}

// Comment-stripped, blank-skipping line reader that remembers line numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  }

  // Next non-empty line after comment stripping; false at end of file.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      std::size_t b = raw.find_last_not_of(" \t\r");
      out = raw.substr(a, b - a + 1);
      return true;
    }
    return false;
  }

  std::string expect_line(const std::string& what) {
    std::string s;
    if (!next(s)) fail(path_, line_, "unexpected end of file, expected " + what);
    return s;
  }

  void expect_header(const std::string& header) {
    const std::string s = expect_line("'" + header + "'");
    if (s != header) fail(path_, line_, "expected '" + header + "', got '" + s + "'");
  }

  // Keyword followed by a single integer.
  long long expect_keyed_int(const std::string& key) {
    const std::string s = expect_line("'" + key + " <value>'");
    std::istringstream ss(s);
    std::string k;
    long long v = 0;
    if (!(ss >> k >> v) || k != key || !at_end(ss))
      fail(path_, line_, "expected '" + key + " <integer>', got '" + s + "'");
    return v;
  }

  const std::string& path() const { return path_; }
  int line() const { return line_; }

  static bool at_end(std::istringstream& ss) {
    std::string rest;
    return !(ss >> rest);
  }

 private:
  std::string path_;
  std::ifstream in_;
  int line_ = 0;
};

std::vector<double> parse_doubles(LineReader& r, const std::string& s, int expected) {
  std::istringstream ss(s);
  std::vector<double> out;
  double v;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) fail(r.path(), r.line(), "malformed number in '" + s + "'");
  if (expected >= 0 && static_cast<int>(out.size()) != expected)
    fail(r.path(), r.line(),
         "expected " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
  return out;
}

std::vector<long long> parse_ints(LineReader& r, const std::string& s, int expected) {
  std::istringstream ss(s);
  std::vector<long long> out;
  long long v;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) fail(r.path(), r.line(), "malformed integer in '" + s + "'");
  if (expected >= 0 && static_cast<int>(out.size()) != expected)
    fail(r.path(), r.line(),
         "expected " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, tmp + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::ParseError, tmp + ": write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorCode::ParseError, path + ": rename failed");
}

core::PsdCollection read_psdc(const std::string& path) {
  LineReader r(path);
  r.expect_header("PSDC v1");
  const long long n = r.expect_keyed_int("dim");
  const long long count = r.expect_keyed_int("count");
  if (n < 1) fail(r.path(), r.line(), "dim must be positive");
  if (count < 1) fail(r.path(), r.line(), "count must be positive");

  std::vector<linalg::SymMatrix> mats;
  mats.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const std::string head = r.expect_line("'matrix " + std::to_string(i) + "'");
    std::istringstream ss(head);
    std::string k;
    long long idx = -1;
    if (!(ss >> k >> idx) || k != "matrix" || idx != i || !LineReader::at_end(ss))
      fail(r.path(), r.line(), "expected 'matrix " + std::to_string(i) + "', got '" + head + "'");
    std::vector<double> rows;
    rows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (long long row = 0; row < n; ++row) {
      std::vector<double> vals =
          parse_doubles(r, r.expect_line("matrix row"), static_cast<int>(n));
      rows.insert(rows.end(), vals.begin(), vals.end());
    }
    mats.push_back(linalg::SymMatrix::from_rows(static_cast<int>(n), rows));
  }
  std::string extra;
  if (r.next(extra)) fail(r.path(), r.line(), "trailing content '" + extra + "'");
  return core::PsdCollection::create(std::move(mats));
}

void write_psdc(const core::PsdCollection& collection, const std::string& path) {
  std::ostringstream out;
  out << "PSDC v1\n";
  out << "dim " << collection.dim << "\n";
  out << "count " << collection.size() << "\n";
  for (int i = 0; i < collection.size(); ++i) {
    out << "matrix " << i << "\n";
    const linalg::SymMatrix& m = collection.matrices[static_cast<std::size_t>(i)];
    for (int a = 0; a < collection.dim; ++a) {
      for (int b = 0; b < collection.dim; ++b) {
        if (b) out << ' ';
        out << format_double(m.at(a, b));
      }
      out << '\n';
    }
  }
  write_text_atomic(path, out.str());
}

core::WeightVector read_weights(const std::string& path) {
  LineReader r(path);
  r.expect_header("WEIGHTS v1");
  const long long count = r.expect_keyed_int("count");
  if (count < 1) fail(r.path(), r.line(), "count must be positive");

  core::WeightVector w;
  w.size = static_cast<int>(count);
  std::string s;
  long long last = -1;
  while (r.next(s)) {
    std::istringstream ss(s);
    long long idx;
    double value;
    if (!(ss >> idx >> value) || !LineReader::at_end(ss))
      fail(r.path(), r.line(), "expected '<index> <weight>', got '" + s + "'");
    if (idx < 0 || idx >= count) fail(r.path(), r.line(), "index out of range");
    if (idx <= last) fail(r.path(), r.line(), "indices must be strictly ascending");
    if (!(value >= 0.0) || !std::isfinite(value))
      fail(r.path(), r.line(), "weights must be finite and nonnegative");
    last = idx;
    if (value != 0.0) w.weights.emplace(static_cast<int>(idx), value);
  }
  return w;
}

void write_weights(const core::WeightVector& weights, const std::string& path) {
  std::ostringstream out;
  out << "WEIGHTS v1\n";
  out << "count " << weights.size << "\n";
  for (const auto& [i, v] : weights.weights)
    if (v != 0.0) out << i << ' ' << format_double(v) << '\n';
  write_text_atomic(path, out.str());
}

groups::FiniteGroup read_group(const std::string& path) {
  LineReader r(path);
  r.expect_header("GROUP v1");
  const long long order = r.expect_keyed_int("order");
  if (order < 1) fail(r.path(), r.line(), "order must be positive");
  const long long identity = r.expect_keyed_int("identity");

  std::optional<std::vector<int>> abelian;
  std::string s = r.expect_line("'table' or 'abelian ...'");
  {
    std::istringstream ss(s);
    std::string k;
    ss >> k;
    if (k == "abelian") {
      std::vector<int> ks;
      long long v;
      while (ss >> v) {
        if (v < 1) fail(r.path(), r.line(), "factor orders must be positive");
        ks.push_back(static_cast<int>(v));
      }
      if (!ss.eof()) fail(r.path(), r.line(), "malformed integer in '" + s + "'");
      if (ks.empty()) fail(r.path(), r.line(), "abelian line needs at least one factor");
      abelian = std::move(ks);
      s = r.expect_line("'table'");
    }
  }
  if (s != "table") fail(r.path(), r.line(), "expected 'table', got '" + s + "'");

  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
  for (long long g = 0; g < order; ++g) {
    std::vector<long long> row =
        parse_ints(r, r.expect_line("table row"), static_cast<int>(order));
    for (long long v : row) {
      if (v < 0 || v >= order) fail(r.path(), r.line(), "table entry out of range");
      table.push_back(static_cast<int>(v));
    }
  }
  groups::FiniteGroup group =
      groups::FiniteGroup::from_table(static_cast<int>(order), std::move(table), abelian);
  if (group.identity() != identity)
    throw Error(ErrorCode::InvalidTable, path + ": declared identity does not match the table");
  return group;
}

void write_group(const groups::FiniteGroup& group, const std::string& path) {
  std::ostringstream out;
  out << "GROUP v1\n";
  out << "order " << group.order() << "\n";
  out << "identity " << group.identity() << "\n";
  if (group.abelian_decomposition()) {
    out << "abelian";
    for (int k : *group.abelian_decomposition()) out << ' ' << k;
    out << '\n';
  }
  out << "table\n";
  for (int g = 0; g < group.order(); ++g) {
    for (int h = 0; h < group.order(); ++h) {
      if (h) out << ' ';
      out << group.mul(g, h);
    }
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

groups::GeneratorSet read_gens(const std::string& path, const groups::FiniteGroup& group) {
  LineReader r(path);
  r.expect_header("GENS v1");
  const std::string elems_line = r.expect_line("generator elements");
  std::vector<long long> elems = parse_ints(r, elems_line, -1);
  if (elems.empty()) fail(r.path(), r.line(), "generator list is empty");
  std::vector<int> elements;
  for (long long e : elems) {
    if (e < 0 || e >= group.order()) fail(r.path(), r.line(), "generator out of range");
    elements.push_back(static_cast<int>(e));
  }

  std::optional<std::vector<double>> weights;
  std::string s;
  if (r.next(s)) {
    std::istringstream ss(s);
    std::string k;
    ss >> k;
    if (k != "weights") fail(r.path(), r.line(), "expected 'weights ...', got '" + s + "'");
    std::vector<double> w;
    double v;
    while (ss >> v) w.push_back(v);
    if (!ss.eof()) fail(r.path(), r.line(), "malformed number in '" + s + "'");
    if (w.size() != elements.size())
      fail(r.path(), r.line(), "weights must parallel the generator list");
    weights = std::move(w);
  }
  return groups::GeneratorSet::create(group, std::move(elements), std::move(weights));
}

void write_gens(const groups::GeneratorSet& gens, const std::string& path) {
  std::ostringstream out;
  out << "GENS v1\n";
  for (std::size_t i = 0; i < gens.elements.size(); ++i) {
    if (i) out << ' ';
    out << gens.elements[i];
  }
  out << '\n';
  if (gens.weights) {
    out << "weights";
    for (double w : *gens.weights) out << ' ' << format_double(w);
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

instances::Graph read_graph(const std::string& path) {
  LineReader r(path);
  r.expect_header("GRAPH v1");
  const long long n = r.expect_keyed_int("vertices");
  const long long m = r.expect_keyed_int("edges");
  if (n < 1) fail(r.path(), r.line(), "vertex count must be positive");
  if (m < 0) fail(r.path(), r.line(), "edge count must be nonnegative");

  std::vector<instances::Graph::Edge> edges;
  for (long long i = 0; i < m; ++i) {
    const std::string s = r.expect_line("edge line");
    std::istringstream ss(s);
    long long u, v;
    double w = 1.0;
    if (!(ss >> u >> v)) fail(r.path(), r.line(), "expected 'u v [w]', got '" + s + "'");
    ss >> w;
    if (!LineReader::at_end(ss)) fail(r.path(), r.line(), "trailing tokens in '" + s + "'");
    if (u < 0 || u >= n || v < 0 || v >= n) fail(r.path(), r.line(), "endpoint out of range");
    if (u == v) fail(r.path(), r.line(), "self-loops are not allowed");
    if (!(w >= 0.0) || !std::isfinite(w)) fail(r.path(), r.line(), "weight must be nonnegative");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }
  return instances::Graph::create(static_cast<int>(n), std::move(edges));
}

void write_graph(const instances::Graph& graph, const std::string& path) {
  std::ostringstream out;
  out << "GRAPH v1\n";
  out << "vertices " << graph.n << "\n";
  out << "edges " << graph.edges.size() << "\n";
  for (const auto& e : graph.edges)
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  write_text_atomic(path, out.str());
}

groups::GroupAction read_action(const std::string& path) {
  LineReader r(path);
  r.expect_header("ACTION v1");
  const long long points = r.expect_keyed_int("points");
  const long long d = r.expect_keyed_int("gens");
  if (points < 1) fail(r.path(), r.line(), "point count must be positive");
  if (d < 1) fail(r.path(), r.line(), "generator count must be positive");

  std::vector<std::vector<int>> perms;
  for (long long j = 0; j < d; ++j) {
    std::vector<long long> row =
        parse_ints(r, r.expect_line("permutation line"), static_cast<int>(points));
    std::vector<int> p;
    for (long long v : row) {
      if (v < 0 || v >= points) fail(r.path(), r.line(), "permutation image out of range");
      p.push_back(static_cast<int>(v));
    }
    perms.push_back(std::move(p));
  }
  return groups::GroupAction::create(static_cast<int>(points), std::move(perms));
}

void write_action(const groups::GroupAction& action, const std::string& path) {
  std::ostringstream out;
  out << "ACTION v1\n";
  out << "points " << action.points << "\n";
  out << "gens " << action.perms.size() << "\n";
  for (const auto& p : action.perms) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << p[i];
    }
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

}  // namespace psdspar::io
