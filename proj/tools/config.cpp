#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace kerrlab::cli {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": not finite");
  return x;
}

long integer(const json& v, const std::string& where, long lo) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  const long x = v.get<long>();
  if (x < lo) throw ConfigError(where + ": must be at least " + std::to_string(lo));
  return x;
}

double positive(const json& v, const std::string& where) {
  const double x = number(v, where);
  if (!(x > 0.0)) throw ConfigError(where + ": must be positive");
  return x;
}

template <class F>
void maybe(const json& obj, const char* key, F&& f) {
  if (obj.contains(key)) f(obj.at(key));
}

FrequencyTriplet triplet(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": expected [xi_tau, xi_phi, Lambda]");
  return {number(v[0], where), number(v[1], where), number(v[2], where)};
}

GaussianPacket packet(const json& v, const std::string& where) {
  only_keys(v, where, {"center", "width", "omega0", "direction", "amplitude"});
  GaussianPacket pk{0.0, 2.0, 0.5, -1, 1.0};
  maybe(v, "center", [&](const json& x) { pk.center = number(x, where + ".center"); });
  maybe(v, "width", [&](const json& x) { pk.width = positive(x, where + ".width"); });
  maybe(v, "omega0", [&](const json& x) { pk.omega0 = number(x, where + ".omega0"); });
  maybe(v, "amplitude", [&](const json& x) { pk.amplitude = number(x, where + ".amplitude"); });
  maybe(v, "direction", [&](const json& x) {
    if (!x.is_string()) throw ConfigError(where + ".direction: expected \"in\", \"out\" or \"standing\"");
    const auto s = x.get<std::string>();
    if (s == "in")
      pk.direction = -1;
    else if (s == "out")
      pk.direction = 1;
    else if (s == "standing")
      pk.direction = 0;
    else
      throw ConfigError(where + ".direction: expected \"in\", \"out\" or \"standing\"");
  });
  return pk;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig c;
  only_keys(doc, "config",
            {"schema", "mass", "spin", "seed", "workers", "constants", "samples", "certify",
             "potential", "wave"});
  if (!doc.contains("schema")) throw ConfigError("config: missing \"schema\"");
  if (integer(doc.at("schema"), "schema", 0) != 1)
    throw ConfigError("schema: only version 1 is understood");
  maybe(doc, "mass", [&](const json& x) { c.mass = number(x, "mass"); });
  maybe(doc, "spin", [&](const json& x) { c.spin = number(x, "spin"); });
  maybe(doc, "seed", [&](const json& x) {
    c.seed = static_cast<std::uint64_t>(integer(x, "seed", 0));
  });
  maybe(doc, "workers", [&](const json& x) { c.workers = static_cast<unsigned>(integer(x, "workers", 0)); });

  maybe(doc, "constants", [&](const json& k) {
    only_keys(k, "constants", {"delta_H", "delta_BL", "delta_F", "theta", "R"});
    maybe(k, "delta_H", [&](const json& x) { c.delta_H = positive(x, "constants.delta_H"); });
    maybe(k, "delta_BL", [&](const json& x) { c.delta_BL = positive(x, "constants.delta_BL"); });
    maybe(k, "delta_F", [&](const json& x) { c.delta_F = positive(x, "constants.delta_F"); });
    maybe(k, "theta", [&](const json& x) { c.theta = positive(x, "constants.theta"); });
    maybe(k, "R", [&](const json& x) { c.R = positive(x, "constants.R"); });
  });

  maybe(doc, "samples", [&](const json& s) {
    only_keys(s, "samples",
              {"geometry", "potential", "derivative", "superradiance", "symbols", "cover", "fit"});
    maybe(s, "geometry", [&](const json& x) { c.geometry_samples = int(integer(x, "samples.geometry", 1)); });
    maybe(s, "potential", [&](const json& x) { c.potential_samples = int(integer(x, "samples.potential", 1)); });
    maybe(s, "derivative", [&](const json& x) { c.derivative_samples = int(integer(x, "samples.derivative", 1)); });
    maybe(s, "superradiance", [&](const json& x) { c.superradiance_samples = int(integer(x, "samples.superradiance", 1)); });
    maybe(s, "symbols", [&](const json& x) { c.symbol_samples = int(integer(x, "samples.symbols", 1)); });
    maybe(s, "cover", [&](const json& x) { c.cover_samples = integer(x, "samples.cover", 1); });
    maybe(s, "fit", [&](const json& x) { c.fit_samples = int(integer(x, "samples.fit", 100)); });
  });

  maybe(doc, "certify", [&](const json& s) {
    only_keys(s, "certify", {"grid", "boundary_grid", "multipliers"});
    maybe(s, "grid", [&](const json& g) {
      only_keys(g, "certify.grid", {"n_r", "n_alpha", "n_beta"});
      maybe(g, "n_r", [&](const json& x) { c.grid.n_r = int(integer(x, "certify.grid.n_r", 2)); });
      maybe(g, "n_alpha", [&](const json& x) { c.grid.n_alpha = int(integer(x, "certify.grid.n_alpha", 2)); });
      maybe(g, "n_beta", [&](const json& x) { c.grid.n_beta = int(integer(x, "certify.grid.n_beta", 2)); });
    });
    maybe(s, "boundary_grid", [&](const json& g) {
      only_keys(g, "certify.boundary_grid", {"n_alpha", "n_beta"});
      maybe(g, "n_alpha", [&](const json& x) { c.boundary_alpha = int(integer(x, "certify.boundary_grid.n_alpha", 2)); });
      maybe(g, "n_beta", [&](const json& x) { c.boundary_beta = int(integer(x, "certify.boundary_grid.n_beta", 2)); });
    });
    maybe(s, "multipliers", [&](const json& k) {
      only_keys(k, "certify.multipliers",
                {"A", "B", "c_prime", "delta0", "C2", "c_y", "phi0", "eps", "lambda"});
      MultiplierConstants mc;
      maybe(k, "A", [&](const json& x) { mc.A = positive(x, "certify.multipliers.A"); });
      maybe(k, "B", [&](const json& x) { mc.B = positive(x, "certify.multipliers.B"); });
      maybe(k, "c_prime", [&](const json& x) { mc.c_prime = positive(x, "certify.multipliers.c_prime"); });
      maybe(k, "delta0", [&](const json& x) { mc.delta0 = positive(x, "certify.multipliers.delta0"); });
      maybe(k, "C2", [&](const json& x) { mc.C2 = positive(x, "certify.multipliers.C2"); });
      maybe(k, "c_y", [&](const json& x) { mc.c_y = positive(x, "certify.multipliers.c_y"); });
      maybe(k, "phi0", [&](const json& x) { mc.phi0 = positive(x, "certify.multipliers.phi0"); });
      maybe(k, "eps", [&](const json& x) { mc.eps = positive(x, "certify.multipliers.eps"); });
      maybe(k, "lambda", [&](const json& x) { mc.lambda = positive(x, "certify.multipliers.lambda"); });
      c.multipliers = mc;
    });
  });

  maybe(doc, "potential", [&](const json& s) {
    only_keys(s, "potential", {"xi", "r_from", "r_to", "points"});
    maybe(s, "xi", [&](const json& x) {
      if (!x.is_array() || x.empty()) throw ConfigError("potential.xi: expected a non-empty list");
      c.scan_xi.clear();
      for (std::size_t i = 0; i < x.size(); ++i)
        c.scan_xi.push_back(triplet(x[i], "potential.xi[" + std::to_string(i) + "]"));
    });
    maybe(s, "r_from", [&](const json& x) { c.scan_r_from = positive(x, "potential.r_from"); });
    maybe(s, "r_to", [&](const json& x) { c.scan_r_to = positive(x, "potential.r_to"); });
    maybe(s, "points", [&](const json& x) { c.scan_points = int(integer(x, "potential.points", 2)); });
  });

  maybe(doc, "wave", [&](const json& s) {
    only_keys(s, "wave",
              {"mode", "grid", "T_final", "boundary", "record_every", "packet", "packets",
               "omegas", "omega_range"});
    maybe(s, "mode", [&](const json& m) {
      only_keys(m, "wave.mode", {"m_az", "Lambda0"});
      maybe(m, "m_az", [&](const json& x) {
        if (!x.is_number_integer()) throw ConfigError("wave.mode.m_az: expected an integer");
        c.mode.m_az = x.get<int>();
      });
      maybe(m, "Lambda0", [&](const json& x) { c.mode.Lambda0 = number(x, "wave.mode.Lambda0"); });
    });
    maybe(s, "grid", [&](const json& g) {
      only_keys(g, "wave.grid", {"rs_left", "rs_right", "h", "cfl"});
      maybe(g, "rs_left", [&](const json& x) { c.wave_grid.rs_left = number(x, "wave.grid.rs_left"); });
      maybe(g, "rs_right", [&](const json& x) { c.wave_grid.rs_right = number(x, "wave.grid.rs_right"); });
      maybe(g, "h", [&](const json& x) { c.wave_grid.h = positive(x, "wave.grid.h"); });
      maybe(g, "cfl", [&](const json& x) { c.wave_grid.cfl = positive(x, "wave.grid.cfl"); });
      if (!(c.wave_grid.rs_right > c.wave_grid.rs_left))
        throw ConfigError("wave.grid: rs_right must exceed rs_left");
    });
    maybe(s, "T_final", [&](const json& x) { c.T_final = positive(x, "wave.T_final"); });
    maybe(s, "record_every", [&](const json& x) { c.record_every = int(integer(x, "wave.record_every", 1)); });
    maybe(s, "boundary", [&](const json& x) {
      const auto b = x.is_string() ? x.get<std::string>() : std::string();
      if (b == "absorbing")
        c.boundary = BoundaryKind::Absorbing;
      else if (b == "reflecting")
        c.boundary = BoundaryKind::Reflecting;
      else
        throw ConfigError("wave.boundary: expected \"absorbing\" or \"reflecting\"");
    });
    maybe(s, "packet", [&](const json& x) { c.packet = packet(x, "wave.packet"); });
    maybe(s, "packets", [&](const json& x) {
      if (!x.is_array()) throw ConfigError("wave.packets: expected a list");
      for (std::size_t i = 0; i < x.size(); ++i)
        c.packets.push_back(packet(x[i], "wave.packets[" + std::to_string(i) + "]"));
    });
    maybe(s, "omegas", [&](const json& x) {
      if (!x.is_array()) throw ConfigError("wave.omegas: expected a list");
      for (std::size_t i = 0; i < x.size(); ++i)
        c.omegas.push_back(number(x[i], "wave.omegas[" + std::to_string(i) + "]"));
    });
    maybe(s, "omega_range", [&](const json& r) {
      only_keys(r, "wave.omega_range", {"from", "to", "count"});
      if (!r.contains("from") || !r.contains("to") || !r.contains("count"))
        throw ConfigError("wave.omega_range: needs from, to and count");
      const double lo = number(r.at("from"), "wave.omega_range.from");
      const double hi = number(r.at("to"), "wave.omega_range.to");
      const long n = integer(r.at("count"), "wave.omega_range.count", 1);
      for (long i = 0; i < n; ++i)
        c.omegas.push_back(n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1));
    });
  });
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["schema"] = c.schema;
  j["mass"] = c.mass;
  j["spin"] = c.spin;
  j["seed"] = c.seed;
  nlohmann::ordered_json k;
  if (c.delta_H) k["delta_H"] = *c.delta_H;
  if (c.delta_BL) k["delta_BL"] = *c.delta_BL;
  if (c.delta_F) k["delta_F"] = *c.delta_F;
  if (c.theta) k["theta"] = *c.theta;
  k["R"] = c.R;
  j["constants"] = k;
  return j;
}

}  // namespace kerrlab::cli
