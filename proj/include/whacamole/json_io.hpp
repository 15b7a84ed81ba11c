#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "whacamole/error.hpp"
#include "whacamole/model.hpp"

namespace whacamole {

using Json = nlohmann::json;

inline Json instance_to_json(const Instance& inst) {
  Json steps = Json::array();
  for (const StepOps& ops : inst.steps()) {
    Json ins = Json::array();
    for (const Insertion& i : ops.inserts) {
      ins.push_back({{"id", inst.id(i.item)},
                     {"weight", inst.weight(i.item)},
                     {"after", i.after ? Json(inst.id(*i.after)) : Json(nullptr)}});
    }
    Json del = Json::array();
    for (ItemKey d : ops.deletes) del.push_back(inst.id(d));
    steps.push_back({{"insert", ins}, {"delete", del}});
  }
  return {{"flavor", std::string(to_string(inst.flavor()))}, {"steps", steps}};
}

inline Instance instance_from_json(const Json& j) {
  try {
    InstanceBuilder b(parse_flavor(j.at("flavor").get<std::string>()));
    for (const Json& s : j.at("steps")) {
      b.step();
      if (s.contains("insert")) {
        for (const Json& ins : s.at("insert")) {
          std::optional<std::string> after;
          if (ins.contains("after") && !ins.at("after").is_null()) after = ins.at("after").get<std::string>();
          b.insert(ins.at("id").get<std::string>(), ins.at("weight").get<double>(),
                   after ? std::optional<std::string_view>{*after} : std::nullopt);
        }
      }
      if (s.contains("delete")) {
        for (const Json& d : s.at("delete")) b.remove(d.get<std::string>());
      }
    }
    return std::move(b).build();
  } catch (const Json::exception& e) {
    throw MalformedInstance(e.what());
  }
}

inline Json schedule_to_json(const Instance& inst, const Schedule& s) {
  Json picks = Json::array();
  for (const auto& p : s.picks) picks.push_back(p ? Json(inst.id(*p)) : Json(nullptr));
  return {{"picks", picks}};
}

inline Schedule schedule_from_json(const Instance& inst, const Json& j) {
  Schedule s;
  try {
    for (const Json& p : j.at("picks")) {
      if (p.is_null()) {
        s.picks.push_back(std::nullopt);
        continue;
      }
      const auto k = inst.find(p.get<std::string>());
      if (!k) throw InvalidPick("unknown id '" + p.get<std::string>() + "' in schedule");
      s.picks.push_back(*k);
    }
  } catch (const Json::exception& e) {
    throw InvalidPick(e.what());
  }
  return s;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw BadConfig(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw BadConfig("cannot write '" + path + "'");
  out << text;
}

}  // namespace whacamole
