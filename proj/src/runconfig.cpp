#include "rotorlattice/runconfig.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "rotorlattice/errors.hpp"

namespace rotor {

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not a number");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not an integer");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not a nonnegative integer");
  }
}

// "diagonal b=<real>"  or  "0,0=2.5; 1,0=-1; ..."
void parse_stencil(RunConfig& cfg, const std::string& value) {
  const std::string v = trim(value);
  if (lower(v).rfind("diagonal", 0) == 0) {
    const auto rest = trim(v.substr(8));
    if (rest.rfind("b=", 0) != 0)
      throw ConfigError("model.stencil: diagonal form is 'diagonal b=<real>'");
    cfg.stencil_b = parse_real("model.stencil", trim(rest.substr(2)));
    cfg.stencil_entries.clear();
    return;
  }
  std::vector<StencilEntry> entries;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("model.stencil: entry '" + item +
                        "' is not offset=coefficient");
    StencilEntry e;
    std::istringstream off(item.substr(0, eq));
    std::string c;
    while (std::getline(off, c, ','))
      e.offset.push_back(
          static_cast<int>(parse_int("model.stencil offset", trim(c))));
    e.coeff = parse_real("model.stencil coefficient", trim(item.substr(eq + 1)));
    entries.push_back(std::move(e));
  }
  if (entries.empty())
    throw ConfigError("model.stencil: no entries given");
  cfg.stencil_entries = std::move(entries);
}

void parse_epochs(RunConfig& cfg, const std::string& value) {
  const auto toks = split_ws(value);
  if (toks.empty()) throw ConfigError("run.epochs: empty value");
  if (toks.size() == 1 && toks[0].find('.') == std::string::npos) {
    const long long k = parse_int("run.epochs", toks[0]);
    if (k < 1) throw ConfigError("run.epochs: count must be positive");
    cfg.epoch_count = static_cast<int>(k);
    cfg.epochs.clear();
    return;
  }
  std::vector<double> ts;
  for (const auto& t : toks) ts.push_back(parse_real("run.epochs", t));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < 0.0) throw ConfigError("run.epochs: times must be >= 0");
    if (i > 0 && ts[i] <= ts[i - 1])
      throw ConfigError("run.epochs: times must be strictly ascending");
  }
  cfg.epochs = std::move(ts);
}

void parse_start(RunConfig& cfg, const std::string& value) {
  const auto toks = split_ws(value);
  if (toks.empty()) throw ConfigError("run.start: empty value");
  const std::string kind = lower(toks[0]);
  if (kind == "gaussian" && toks.size() == 1) {
    cfg.start = RunConfig::Start::Gaussian;
  } else if (kind == "zero" && toks.size() == 1) {
    cfg.start = RunConfig::Start::Zero;
  } else if (kind == "point" && (toks.size() == 2 || toks.size() == 3)) {
    cfg.start = RunConfig::Start::Point;
    cfg.start_site = static_cast<int>(parse_int("run.start site", toks[1]));
    cfg.start_amp =
        toks.size() == 3 ? parse_real("run.start amplitude", toks[2]) : 1.0;
  } else {
    throw ConfigError(
        "run.start: expected 'gaussian', 'zero' or 'point <site> [amp]'");
  }
}

void parse_formats(RunConfig& cfg, const std::string& value) {
  cfg.write_csv = false;
  cfg.write_json = false;
  for (const auto& tok : split_ws(value)) {
    const std::string f = lower(tok);
    if (f == "csv")
      cfg.write_csv = true;
    else if (f == "json")
      cfg.write_json = true;
    else
      throw ConfigError("output.formats: unknown format '" + tok + "'");
  }
  if (!cfg.write_csv && !cfg.write_json)
    throw ConfigError("output.formats: need at least one of csv, json");
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key,
           const std::string& value) {
  const std::string full = section + "." + key;
  if (cfg.explicit_keys.count(full))
    throw ConfigError("duplicate config key '" + full + "'");
  cfg.explicit_keys.insert(full);

  if (full == "lattice.n") {
    const long long n = parse_int(full, value);
    if (n < 1 || n > 4) throw ConfigError("lattice.n must be in [1, 4]");
    cfg.dim = static_cast<int>(n);
  } else if (full == "lattice.l") {
    const long long l = parse_int(full, value);
    if (l < 2) throw ConfigError("lattice.l must be at least 2");
    cfg.side = static_cast<int>(l);
  } else if (full == "model.stencil") {
    parse_stencil(cfg, value);
  } else if (full == "model.beta") {
    cfg.beta = parse_real(full, value);
    if (cfg.beta < 0.0) throw ConfigError("model.beta must be >= 0");
  } else if (full == "measure.r") {
    cfg.r = parse_real(full, value);
    if (!(cfg.r > 0.0)) throw ConfigError("measure.r must be > 0");
  } else if (full == "integrator.scheme") {
    cfg.scheme = scheme_from_string(lower(trim(value)));
  } else if (full == "integrator.dt") {
    cfg.dt = parse_real(full, value);
    if (!(cfg.dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
  } else if (full == "integrator.order") {
    cfg.order = split_order_from_string(lower(trim(value)));
  } else if (full == "run.t") {
    cfg.horizon = parse_real(full, value);
    if (!(cfg.horizon > 0.0)) throw ConfigError("run.t must be > 0");
  } else if (full == "run.epochs") {
    parse_epochs(cfg, value);
  } else if (full == "run.ntraj") {
    const long long n = parse_int(full, value);
    if (n < 1) throw ConfigError("run.ntraj must be at least 1");
    cfg.ntraj = static_cast<int>(n);
  } else if (full == "run.seed") {
    cfg.seed = parse_u64(full, value);
    cfg.seed_set = true;
  } else if (full == "run.threads") {
    const long long n = parse_int(full, value);
    if (n < 0) throw ConfigError("run.threads must be >= 0");
    cfg.threads = static_cast<int>(n);
  } else if (full == "run.track") {
    std::vector<int> sites;
    for (const auto& tok : split_ws(value)) {
      const long long s = parse_int(full, tok);
      if (s < 0) throw ConfigError("run.track: site ids must be >= 0");
      sites.push_back(static_cast<int>(s));
    }
    if (sites.empty()) throw ConfigError("run.track: empty value");
    cfg.track = std::move(sites);
  } else if (full == "run.start") {
    parse_start(cfg, value);
  } else if (full == "output.dir") {
    cfg.out_dir = trim(value);
    if (cfg.out_dir.empty()) throw ConfigError("output.dir: empty value");
  } else if (full == "output.formats") {
    parse_formats(cfg, value);
  } else {
    throw ConfigError("unknown config key '" + full + "'");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  static const std::set<std::string> kSections{"lattice",    "model",
                                               "measure",    "integrator",
                                               "run",        "output"};
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!kSections.count(section))
        throw ConfigError("unknown config section '[" + section + "]'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any [section]");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    apply(cfg, section, key, value);
  }
  if (!cfg.seed_set) throw ConfigError("run.seed is required");
  // cheap cross-field validation; geometry constraints surface in make_model
  for (double t : cfg.epochs)
    if (t > cfg.horizon)
      throw ConfigError("run.epochs: epoch beyond run.t");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

PrecisionStencil RunConfig::make_stencil() const {
  if (stencil_entries.empty()) return PrecisionStencil::diagonal(dim, stencil_b);
  for (const auto& e : stencil_entries)
    if (static_cast<int>(e.offset.size()) != dim)
      throw ConfigError("model.stencil: offset arity does not match lattice.n");
  return PrecisionStencil(dim, stencil_entries);
}

Model RunConfig::make_model() const {
  Model m(TorusLattice(dim, side), make_stencil());
  for (int s : track)
    if (s >= m.lattice().num_sites())
      throw ConfigError("run.track: site id beyond the lattice");
  if (start == Start::Point && start_site >= m.lattice().num_sites())
    throw ConfigError("run.start: site id beyond the lattice");
  return m;
}

StepPlan RunConfig::make_plan() const {
  StepPlan p;
  p.scheme = scheme;
  p.order = order;
  p.dt = dt;
  p.beta = beta;
  return p;
}

std::vector<double> RunConfig::make_epochs() const {
  if (!epochs.empty()) return epochs;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(epoch_count) + 1);
  for (int k = 0; k <= epoch_count; ++k)
    out.push_back(horizon * k / epoch_count);
  return out;
}

std::vector<double> RunConfig::start_field(const Model& model) const {
  std::vector<double> x(static_cast<std::size_t>(model.lattice().num_sites()),
                        0.0);
  if (start == Start::Point)
    x[static_cast<std::size_t>(start_site)] = start_amp;
  return x;
}

std::string RunConfig::canonical_text() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  const auto real = [](double v) {
    char buf[32];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
  };
  out << "lattice.n=" << dim << "\nlattice.l=" << side << "\n";
  out << "model.stencil=";
  if (stencil_entries.empty()) {
    out << "diagonal b=" << real(stencil_b);
  } else {
    for (std::size_t i = 0; i < stencil_entries.size(); ++i) {
      if (i) out << "; ";
      for (std::size_t k = 0; k < stencil_entries[i].offset.size(); ++k)
        out << (k ? "," : "") << stencil_entries[i].offset[k];
      out << "=" << real(stencil_entries[i].coeff);
    }
  }
  out << "\nmodel.beta=" << real(beta);
  out << "\nmeasure.r=" << real(r);
  out << "\nintegrator.scheme=" << to_string(scheme);
  out << "\nintegrator.dt=" << real(dt);
  out << "\nintegrator.order=" << to_string(order);
  out << "\nrun.t=" << real(horizon);
  out << "\nrun.epochs=";
  const auto eps = make_epochs();
  for (std::size_t i = 0; i < eps.size(); ++i)
    out << (i ? " " : "") << real(eps[i]);
  out << "\nrun.ntraj=" << ntraj;
  out << "\nrun.seed=" << seed;
  out << "\nrun.track=";
  for (std::size_t i = 0; i < track.size(); ++i)
    out << (i ? " " : "") << track[i];
  out << "\nrun.start=";
  switch (start) {
    case Start::Gaussian: out << "gaussian"; break;
    case Start::Zero: out << "zero"; break;
    case Start::Point:
      out << "point " << start_site << " " << real(start_amp);
      break;
  }
  out << "\n";
  // thread count and output location are execution environment, not
  // experiment identity: runs differing only there must hash alike (and
  // are required to produce byte-identical data)
  return out.str();
}

std::string RunConfig::hash() const {
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

int resolve_threads(const RunConfig& cfg) {
  int t = cfg.threads;
  if (const char* env = std::getenv("ROTORLATTICE_THREADS")) {
    t = static_cast<int>(parse_int("ROTORLATTICE_THREADS", env));
    if (t < 0) throw ConfigError("ROTORLATTICE_THREADS must be >= 0");
  }
  if (t == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    t = hc == 0 ? 1 : static_cast<int>(hc);
  }
  return t;
}

}  // namespace rotor
