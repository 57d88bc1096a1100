#include "isopdm/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace isopdm {
namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  if (key.empty()) return parent;
  return parent.empty() ? key : parent + "." + key;
}

std::string describe(const std::string& source, int line, const std::string& field,
                     const std::string& message) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line;
  os << ": ";
  if (!field.empty()) os << field << ": ";
  os << message;
  return os.str();
}

// Line of every object key, by dotted path. Keys inside arrays get a "[]"
// segment. Runs only on text nlohmann has already accepted.
struct KeyIndex {
  std::map<std::string, int> lines;
  std::vector<std::pair<std::string, int>> duplicates;
};

KeyIndex index_keys(std::string_view text) {
  struct Frame {
    std::string path;
    bool object;
  };
  KeyIndex index;
  std::vector<Frame> stack;
  std::string pending;
  int line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      std::string s;
      std::size_t j = i + 1;
      for (; j < text.size() && text[j] != '"'; ++j) {
        if (text[j] == '\\') ++j;
        s += text[j];
      }
      i = j;
      std::size_t k = j + 1;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == ':' && !stack.empty() && stack.back().object) {
        pending = s;
        const std::string path = join(stack.back().path, s);
        if (!index.lines.emplace(path, line).second) index.duplicates.emplace_back(path, line);
      }
    } else if (c == '{' || c == '[') {
      std::string path;
      if (!stack.empty()) path = stack.back().object ? join(stack.back().path, pending) : stack.back().path + "[]";
      stack.push_back({path, c == '{'});
    } else if ((c == '}' || c == ']') && !stack.empty()) {
      stack.pop_back();
    }
  }
  return index;
}

struct Context {
  std::string source;
  KeyIndex keys;

  int line_of(const std::string& path) const {
    for (std::string p = path;;) {
      if (auto it = keys.lines.find(p); it != keys.lines.end()) return it->second;
      const auto dot = p.rfind('.');
      if (dot == std::string::npos) return 0;
      p.resize(dot);
    }
  }

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ConfigError(source, line_of(path), path, message);
  }
};

const char* type_name(const json& j) { return j.type_name(); }

// Strict view of one JSON object: every key must be consumed before
// finish().
class Reader {
 public:
  Reader(const json& obj, std::string path, const Context& ctx) : obj_(obj), path_(std::move(path)), ctx_(ctx) {
    if (!obj_.is_object()) ctx_.fail(path_, std::string("expected an object, got ") + type_name(obj_));
  }

  const std::string& path() const { return path_; }
  std::string field(const std::string& key) const { return join(path_, key); }
  [[noreturn]] void fail(const std::string& key, const std::string& message) const { ctx_.fail(field(key), message); }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* j = get(key);
    if (!j) return fallback;
    if (!j->is_number()) fail(key, std::string("expected a number, got ") + type_name(*j));
    return j->get<double>();
  }

  double positive(const std::string& key, double fallback) {
    const double x = number(key, fallback);
    if (!(x > 0.0)) fail(key, "must be positive");
    return x;
  }

  int integer(const std::string& key, int fallback, int min_value) {
    const json* j = get(key);
    if (!j) return fallback;
    if (!j->is_number_integer()) fail(key, std::string("expected an integer, got ") + type_name(*j));
    const auto x = j->get<long long>();
    if (x < min_value) fail(key, "must be at least " + std::to_string(min_value));
    if (x > 1000000) fail(key, "is unreasonably large");
    return int(x);
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* j = get(key);
    if (!j) return fallback;
    if (!j->is_boolean()) fail(key, std::string("expected true or false, got ") + type_name(*j));
    return j->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* j = get(key);
    if (!j) return fallback;
    if (!j->is_string()) fail(key, std::string("expected a string, got ") + type_name(*j));
    return j->get<std::string>();
  }

  template <class T>
  T choice(const std::string& key, T fallback, const std::vector<std::pair<std::string, T>>& options) {
    const json* j = get(key);
    if (!j) return fallback;
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (j->is_string() && j->get<std::string>() == name) return value;
      allowed += (allowed.empty() ? "\"" : ", \"") + name + "\"";
    }
    fail(key, "expected one of " + allowed);
  }

  std::optional<Reader> object(const std::string& key) {
    const json* j = get(key);
    if (!j) return std::nullopt;
    return Reader(*j, field(key), ctx_);
  }

  std::pair<double, double> range(const std::string& key, std::pair<double, double> fallback) {
    const json* j = get(key);
    if (!j) return fallback;
    if (!j->is_array() || j->size() != 2 || !(*j)[0].is_number() || !(*j)[1].is_number())
      fail(key, "expected [min, max]");
    return {(*j)[0].get<double>(), (*j)[1].get<double>()};
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!used_.count(it.key())) ctx_.fail(field(it.key()), "unknown key");
  }

 private:
  const json& obj_;
  std::string path_;
  const Context& ctx_;
  std::set<std::string> used_;
};

GridSpec read_grid(Reader r) {
  GridSpec g;
  std::tie(g.u_min, g.u_max) = r.range("u", {g.u_min, g.u_max});
  std::tie(g.v_min, g.v_max) = r.range("v", {g.v_min, g.v_max});
  g.nu = r.integer("nu", g.nu, 3);
  g.nv = r.integer("nv", g.nv, 3);
  r.finish();
  if (!(g.u_min < g.u_max)) r.fail("u", "min must be below max");
  if (!(g.v_min < g.v_max)) r.fail("v", "min must be below max");
  return g;
}

GridSpec required_grid(Reader& parent) {
  auto r = parent.object("grid");
  if (!r) parent.fail("grid", "missing");
  return read_grid(*r);
}

CoordinateMap read_map(Reader r) {
  const std::string kind = r.string("kind", "");
  try {
    if (kind == "identity") {
      r.finish();
      return CoordinateMap::identity();
    }
    if (kind == "parabolic") {
      r.finish();
      return CoordinateMap::parabolic_cylinder();
    }
    if (kind == "polynomial") {
      PolynomialParams p;
      p.c1 = r.number("c1", p.c1);
      p.c2 = r.number("c2", p.c2);
      p.d1 = r.number("d1", p.d1);
      p.d2 = r.number("d2", p.d2);
      p.branch = r.choice<Branch>("branch", p.branch, {{"-", Branch::Minus}, {"+", Branch::Plus}});
      r.finish();
      return CoordinateMap::polynomial(p);
    }
    if (kind == "elliptic" || kind == "bipolar") {
      const double a = r.positive("a", 1.0);
      r.finish();
      return kind == "elliptic" ? CoordinateMap::elliptic_cylinder(a) : CoordinateMap::bipolar(a);
    }
  } catch (const std::invalid_argument& e) {
    r.fail("", e.what());
  }
  if (kind.empty()) r.fail("kind", "missing");
  r.fail("kind", "unknown map \"" + kind + "\" (see list-maps)");
}

std::vector<ModeIndex> read_modes(Reader& r) {
  const json* j = r.get("modes");
  if (!j) return {{0, 0}};
  if (!j->is_array() || j->empty()) r.fail("modes", "expected a non-empty list of [m, n] pairs");
  std::vector<ModeIndex> modes;
  for (const json& pair : *j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer() ||
        pair[0].get<long long>() < 0 || pair[1].get<long long>() < 0 || pair[0].get<long long>() > kMaxHermiteDegree ||
        pair[1].get<long long>() > kMaxHermiteDegree)
      r.fail("modes", "expected [m, n] pairs of integers in [0, " + std::to_string(kMaxHermiteDegree) + "]");
    modes.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  return modes;
}

VerifySpec read_verify(Reader r) {
  VerifySpec v;
  v.modes = read_modes(r);
  v.conformal_tol = r.positive("conformal_tol", v.conformal_tol);
  v.weights_tol = r.positive("weights_tol", v.weights_tol);
  v.curl_tol = r.positive("curl_tol", v.curl_tol);
  if (auto b = r.object("residual")) {
    ResidualCheck c;
    c.grid = required_grid(*b);
    c.tol = b->positive("tol", c.tol);
    b->finish();
    v.residual = c;
  }
  if (auto b = r.object("norm")) {
    NormCheck c;
    c.grid = required_grid(*b);
    c.tol = b->positive("tol", c.tol);
    b->finish();
    v.norm = c;
  }
  if (auto b = r.object("eigen")) {
    EigenCheck c;
    c.grid = required_grid(*b);
    c.k = b->integer("k", c.k, 1);
    if (c.k > 50) b->fail("k", "must be at most 50");
    c.tol = b->positive("tol", c.tol);
    c.discretize.sector =
        b->choice<Sector>("sector", Sector::All, {{"all", Sector::All}, {"even", Sector::EvenUnderReflection}});
    c.discretize.periodic_v = b->boolean("periodic_v", false);
    b->finish();
    v.eigen = c;
  }
  if (auto b = r.object("stationarity")) {
    StationarityCheck c;
    if (const json* t = b->get("times")) {
      if (!t->is_array() || t->size() < 2) b->fail("times", "expected a list of at least two numbers");
      c.times.clear();
      for (const json& x : *t) {
        if (!x.is_number()) b->fail("times", "expected numbers");
        c.times.push_back(x.get<double>());
      }
    }
    c.tol = b->positive("tol", c.tol);
    b->finish();
    v.stationarity = c;
  }
  r.finish();
  return v;
}

Scenario read_scenario(const json& doc, const Context& ctx) {
  Reader top(doc, "", ctx);
  Scenario s;
  s.source = ctx.source;
  s.name = top.string("name", "");

  auto map = top.object("map");
  if (!map) top.fail("map", "missing");
  s.map = read_map(*map);

  if (auto r = top.object("oscillator")) {
    s.osc.m0 = r->positive("m0", s.osc.m0);
    s.osc.hbar = r->positive("hbar", s.osc.hbar);
    s.osc.omega1 = r->positive("omega1", s.osc.omega1);
    s.osc.omega2 = r->positive("omega2", s.osc.omega2);
    r->finish();
  }
  s.mass_form = top.choice<MassForm>("mass_form", MassForm::Derived,
                                     {{"derived", MassForm::Derived}, {"printed", MassForm::Printed}});

  if (auto r = top.object("coherent")) {
    CoherentSpec c;
    c.p = r->integer("p", c.p, 1);
    c.q = r->integer("q", c.q, 1);
    c.L = r->integer("L", c.L, 1);
    c.A = r->number("A", c.A);
    if (!(c.A >= 0.0)) r->fail("A", "must be non-negative");
    c.phi = r->number("phi", c.phi);
    c.convention = r->choice<ModeConvention>(
        "convention", c.convention, {{"stationary", ModeConvention::Stationary}, {"printed", ModeConvention::Printed}});
    s.weighted = r->boolean("weighted", false);
    r->finish();
    const ModeIndex top0 = mode_assignment(c, 0), topL = mode_assignment(c, c.L);
    if (std::max({top0.m, top0.n, topL.m, topL.n}) > kMaxHermiteDegree)
      r->fail("L", "mode numbers exceed " + std::to_string(kMaxHermiteDegree));
    s.coherent = c;
  }

  if (auto r = top.object("magnetic")) {
    MagneticSpec m;
    m.params.B0 = r->number("B0", 0.0);
    m.params.e_charge = r->number("e", 1.0);
    m.params.omega = r->number("omega", s.osc.omega1);
    if (!(m.params.omega >= 0.0)) r->fail("omega", "must be non-negative");
    m.params.c_phase = r->number("c", 0.0);
    m.t = r->number("t", 0.0);
    m.params.m0 = s.osc.m0;
    m.params.hbar = s.osc.hbar;
    r->finish();
    try {
      m.params.validate();
    } catch (const std::invalid_argument& e) {
      r->fail("", e.what());
    }
    s.magnetic = m;
  }

  if (auto r = top.object("grid")) s.grid = read_grid(*r);

  if (auto r = top.object("output")) {
    s.output.prefix = r->string("prefix", s.name.empty() ? s.output.prefix : s.name);
    s.output.csv = r->boolean("csv", true);
    s.output.pgm = r->boolean("pgm", true);
    r->finish();
  } else if (!s.name.empty()) {
    s.output.prefix = s.name;
  }
  if (s.output.prefix.empty() || s.output.prefix.find_first_of("/\\") != std::string::npos)
    ctx.fail("output.prefix", "must be a plain non-empty file name prefix");

  if (auto r = top.object("verify")) s.verify = read_verify(*r);
  top.finish();
  return s;
}

}  // namespace

ConfigError::ConfigError(std::string source, int line, std::string field, const std::string& message)
    : std::runtime_error(describe(source, line, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(end), '\n'));
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw ConfigError(source, line, "", message);
  }
  Context ctx{source, index_keys(text)};
  if (!ctx.keys.duplicates.empty()) {
    const auto& [path, line] = ctx.keys.duplicates.front();
    throw ConfigError(source, line, path, "duplicate key");
  }
  return read_scenario(doc, ctx);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

}  // namespace isopdm
