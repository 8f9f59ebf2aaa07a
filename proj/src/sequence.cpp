#include "jrpulse/sequence.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "jrpulse/errors.hpp"
#include "jrpulse/su2.hpp"

namespace jrpulse {

using nlohmann::json;

HardPulse make_pulse(double nutation, double phase) {
  if (nutation < 0.0) return {-nutation, phase + kPi};
  return {nutation, phase};
}

bool is_physical(const PulseSequence& seq) {
  for (const Instruction& ins : seq.ins) {
    if (const auto* d = std::get_if<Delay>(&ins); d && d->angle < 0.0) return false;
    if (std::holds_alternative<FrameRotation>(ins)) return false;
  }
  return true;
}

PulseSequence concat(PulseSequence a, const PulseSequence& b) {
  a.ins.insert(a.ins.end(), b.ins.begin(), b.ins.end());
  return a;
}

namespace {

json instruction_to_json(const Instruction& ins) {
  json j;
  if (const auto* p = std::get_if<HardPulse>(&ins)) {
    j["kind"] = "pulse";
    j["nutation_deg"] = rad_to_deg(p->nutation);
    j["phase_deg"] = rad_to_deg(p->phase);
  } else if (const auto* d = std::get_if<Delay>(&ins)) {
    j["kind"] = "delay";
    j["angle_deg"] = rad_to_deg(d->angle);
  } else {
    j["kind"] = "frame";
    j["angle_deg"] = rad_to_deg(std::get<FrameRotation>(ins).angle);
  }
  return j;
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw SchemaError(std::string("instruction missing numeric field '") + key + "'");
  return j[key].get<double>();
}

Instruction instruction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("instruction must be an object with a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "pulse") {
    return make_pulse(deg_to_rad(require_number(j, "nutation_deg")),
                      deg_to_rad(require_number(j, "phase_deg")));
  }
  if (kind == "delay") return Delay{deg_to_rad(require_number(j, "angle_deg"))};
  if (kind == "frame") return FrameRotation{deg_to_rad(require_number(j, "angle_deg"))};
  throw SchemaError("unknown instruction kind '" + kind + "'");
}

}  // namespace

std::string sequence_to_json(const PulseSequence& seq) {
  json arr = json::array();
  for (const Instruction& ins : seq.ins) arr.push_back(instruction_to_json(ins));
  return arr.dump();
}

PulseSequence sequence_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("sequence JSON parse error: ") + e.what());
  }
  PulseSequence seq;
  if (j.is_object()) {
    if (j.contains("name") && j["name"].is_string()) seq.name = j["name"].get<std::string>();
    if (j.contains("target") && j["target"].is_string()) seq.target = j["target"].get<std::string>();
    if (!j.contains("sequence")) throw SchemaError("sequence object must contain a 'sequence' array");
    j = j["sequence"];
  }
  if (!j.is_array()) throw SchemaError("sequence must be a JSON array of instructions");
  for (const json& item : j) seq.ins.push_back(instruction_from_json(item));
  return seq;
}

}  // namespace jrpulse
