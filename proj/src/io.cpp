#include "qwalk/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qwalk::io {

namespace {

int require_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    throw InvalidInput(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidInput(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

const json& require_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidInput(std::string("missing array field '") + key + "'");
  }
  return j.at(key);
}

void check_shape(int c, int d) {
  if (c < 1 || c > 16) throw InvalidInput("party count c out of range");
  if (d < 1) throw InvalidInput("dimension d must be >= 1");
}

Position position_from_json(const json& j, int c, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != c) {
    throw InvalidInput("position must be an array of c integers");
  }
  std::vector<int> coords;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw InvalidInput("position entries must be integers");
    const int x = v.get<int>();
    if (x < 0 || x >= d) throw InvalidInput("position entry outside [0, d)");
    coords.push_back(x);
  }
  return Position(std::move(coords));
}

json complex_pair(Complex a) { return json::array({a.real(), a.imag()}); }

json blocks_to_json(const BlockMap& blocks) {
  json out = json::array();
  for (const auto& [x, block] : blocks) {
    const auto& m = block.matrix();
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
      rows.push_back(std::move(row));
    }
    out.push_back({{"pos", x.coords}, {"matrix", std::move(rows)}});
  }
  return out;
}

BlockMap blocks_from_json(const json& j, int c, int d) {
  if (!j.is_array()) throw InvalidInput("blocks must be an array");
  const int dim = coin_dimension(c);
  BlockMap out;
  for (const json& entry : j) {
    if (!entry.is_object() || !entry.contains("pos") || !entry.contains("matrix")) {
      throw InvalidInput("block entries need 'pos' and 'matrix'");
    }
    Position x = position_from_json(entry.at("pos"), c, d);
    const json& rows = entry.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
      throw InvalidInput("block matrix must have 2^c rows");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      const json& row = rows.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw InvalidInput("block matrix rows must have 2^c entries");
      }
      for (int col = 0; col < dim; ++col) {
        const json& pair = row.at(static_cast<std::size_t>(col));
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
          throw InvalidInput("matrix entries must be [re, im] pairs");
        }
        m(r, col) = Complex(pair[0].get<double>(), pair[1].get<double>());
      }
    }
    UnitaryBlock block = [&] {
      try {
        return UnitaryBlock(std::move(m), kInputTol);
      } catch (const NonUnitaryBlock& e) {
        std::ostringstream msg;
        msg << "block at (";
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
          msg << (i ? "," : "") << x.coords[i];
        }
        msg << "): " << e.what();
        throw InvalidInput(msg.str());
      }
    }();
    if (!out.emplace(std::move(x), std::move(block)).second) {
      throw InvalidInput("duplicate block position");
    }
  }
  return out;
}

}  // namespace

json target_to_json(const TargetState& target) {
  json amps = json::array();
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Complex a = target.flat(i);
    if (a == Complex(0.0)) continue;
    amps.push_back({{"index", target.position_of(i).coords},
                    {"re", a.real()},
                    {"im", a.imag()}});
  }
  return {{"c", target.party_count()},
          {"d", target.dimension()},
          {"amplitudes", std::move(amps)}};
}

TargetState target_from_json(const json& j) {
  const int c = require_int(j, "c");
  const int d = require_int(j, "d");
  check_shape(c, d);
  std::size_t size = 1;
  for (int i = 0; i < c; ++i) {
    size *= static_cast<std::size_t>(d);
    if (size > (std::size_t{1} << 26)) throw InvalidInput("target too large");
  }
  std::vector<Complex> amps(size);
  std::vector<bool> seen(size, false);
  for (const json& entry : require_array(j, "amplitudes")) {
    if (!entry.is_object() || !entry.contains("index")) {
      throw InvalidInput("amplitude entries need an 'index'");
    }
    const Position x = position_from_json(entry.at("index"), c, d);
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (int i = 0; i < c; ++i) {
      flat += static_cast<std::size_t>(x[i]) * stride;
      stride *= static_cast<std::size_t>(d);
    }
    if (seen[flat]) throw InvalidInput("duplicate amplitude index");
    seen[flat] = true;
    amps[flat] = Complex(require_number(entry, "re"), require_number(entry, "im"));
  }
  return TargetState(c, d, std::move(amps), kInputTol);
}

json schedule_to_json(const Schedule& schedule, const json& metadata) {
  json steps = json::array();
  for (const CoinStep& step : schedule.steps) {
    steps.push_back({{"shift_power", step.shift_power},
                     {"blocks", blocks_to_json(step.blocks)}});
  }
  json out = {{"c", schedule.party_count},
              {"d", schedule.dimension},
              {"steps", std::move(steps)},
              {"final_blocks", blocks_to_json(schedule.final_coin)}};
  if (!metadata.empty()) out["metadata"] = metadata;
  return out;
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  s.party_count = require_int(j, "c");
  s.dimension = require_int(j, "d");
  check_shape(s.party_count, s.dimension);
  for (const json& step : require_array(j, "steps")) {
    CoinStep cs;
    cs.shift_power = require_int(step, "shift_power");
    if (cs.shift_power < 1) throw InvalidInput("shift_power must be >= 1");
    cs.blocks = blocks_from_json(require_array(step, "blocks"), s.party_count,
                                 s.dimension);
    s.steps.push_back(std::move(cs));
  }
  if (j.contains("final_blocks")) {
    s.final_coin = blocks_from_json(j.at("final_blocks"), s.party_count, s.dimension);
  }
  return s;
}

json walk_state_to_json(const WalkState& state) {
  json amps = json::array();
  const int c = state.party_count();
  for (const auto& [x, v] : state.amplitudes()) {
    for (int z = 0; z < v.size(); ++z) {
      if (v(z) == Complex(0.0)) continue;
      std::vector<int> bits;
      for (int j = 0; j < c; ++j) bits.push_back((z >> j) & 1);
      amps.push_back({{"pos", x.coords},
                      {"coin", bits},
                      {"re", v(z).real()},
                      {"im", v(z).imag()}});
    }
  }
  return {{"c", c}, {"d", state.dimension()}, {"amplitudes", std::move(amps)}};
}

json circuit_to_json(const CircuitIR& circuit) {
  json qubits = json::array();
  for (const Qubit& q : circuit.qubits()) {
    qubits.push_back({{"label", q.label}, {"site", q.site == Site::kA ? "A" : "B"}});
  }
  json gates = json::array();
  for (const Gate& g : circuit.gates()) {
    json entry = {{"kind", to_string(g.kind)},
                  {"controls", g.controls},
                  {"control_values", g.control_values},
                  {"targets", g.targets},
                  {"tag", g.tag}};
    if (g.kind == GateKind::kUcgNode) {
      json rows = json::array();
      for (int r = 0; r < g.matrix.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < g.matrix.cols(); ++c) row.push_back(complex_pair(g.matrix(r, c)));
        rows.push_back(std::move(row));
      }
      entry["matrix"] = std::move(rows);
      entry["cross_cnots"] = g.cross_cnots;
    }
    if (g.kind == GateKind::kLocalIncrement) {
      entry["modulus"] = g.modulus;
      entry["amount"] = g.amount;
    }
    gates.push_back(std::move(entry));
  }
  return {{"d", circuit.dimension()}, {"qubits", std::move(qubits)}, {"gates", std::move(gates)}};
}

json cost_report_to_json(const CostReport& report) {
  json steps = json::array();
  for (const StepCost& s : report.steps) {
    steps.push_back({{"level", s.level},
                     {"cross_cnots", s.cross_cnots},
                     {"local_gates", s.local_gates},
                     {"blocks", s.blocks}});
  }
  const QspCostModel& q = report.state_preparation;
  return {{"d", report.dimension},
          {"long_distance_cnots", report.long_distance_cnots},
          {"local_gates", report.local_gates},
          {"cross_cnots_per_block", report.cross_cnots_per_block},
          {"steps", std::move(steps)},
          {"state_preparation",
           {{"qubits", q.qubits},
            {"half", q.half},
            {"size_formula", q.size_formula},
            {"depth_formula", q.depth_formula},
            {"size", q.size},
            {"depth", q.depth}}}};
}

std::string cost_report_table(const CostReport& report) {
  std::ostringstream out;
  out << "d = " << report.dimension << ", " << report.cross_cnots_per_block
      << " long-distance CNOTs per cross-site block\n";
  out << std::setw(6) << "level" << std::setw(8) << "blocks" << std::setw(14)
      << "cross_cnots" << std::setw(13) << "local_gates" << "\n";
  for (const StepCost& s : report.steps) {
    out << std::setw(6) << s.level << std::setw(8) << s.blocks << std::setw(14)
        << s.cross_cnots << std::setw(13) << s.local_gates << "\n";
  }
  out << std::setw(6) << "total" << std::setw(8) << "" << std::setw(14)
      << report.long_distance_cnots << std::setw(13) << report.local_gates << "\n";
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

}  // namespace qwalk::io
