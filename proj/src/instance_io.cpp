#include "mmech/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace mmech {

namespace {

constexpr int kFormatVersion = 1;

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

int require_int(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  const std::string field = path.empty() ? key : path + "." + key;
  if (!v.is_number_integer()) throw ParseError(field, "expected an integer");
  return v.get<int>();
}

}  // namespace

json rational_to_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) return json(value.get_num().get_si());
  return json(to_string(value));
}

Rational rational_from_json(const json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(std::to_string(value.get<long long>()));
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(field, e.what());
    }
  }
  throw ParseError(field, "expected an integer or a \"p/q\" string");
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["directed"] = inst.directed();
  doc["nodes"] = inst.node_count();
  doc["mode"] = to_string(inst.mode());
  doc["source"] = inst.source();
  doc["target_or_root"] = inst.target_or_root();
  doc["agents"] = inst.agent_count();
  json edges = json::array();
  for (const Edge& e : inst.edges()) {
    edges.push_back(json{{"id", e.id},
                         {"tail", e.tail},
                         {"head", e.head},
                         {"owner", e.owner},
                         {"cost", rational_to_json(e.cost)}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Instance instance_from_json(const json& doc) {
  const int version = require_int(doc, "version", "");
  if (version != kFormatVersion) throw ParseError("version", "unsupported version " + std::to_string(version));
  const json& directed = require(doc, "directed", "");
  if (!directed.is_boolean()) throw ParseError("directed", "expected a boolean");
  const json& mode_field = require(doc, "mode", "");
  if (!mode_field.is_string()) throw ParseError("mode", "expected \"path\" or \"arborescence\"");
  Mode mode;
  if (mode_field == "path")
    mode = Mode::Path;
  else if (mode_field == "arborescence")
    mode = Mode::Arborescence;
  else
    throw ParseError("mode", "expected \"path\" or \"arborescence\"");

  const json& edge_list = require(doc, "edges", "");
  if (!edge_list.is_array()) throw ParseError("edges", "expected an array");
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    const std::string path = "edges[" + std::to_string(k) + "]";
    const json& item = edge_list[k];
    Edge e;
    e.id = require_int(item, "id", path);
    e.tail = require_int(item, "tail", path);
    e.head = require_int(item, "head", path);
    e.owner = require_int(item, "owner", path);
    e.cost = rational_from_json(require(item, "cost", path), path + ".cost");
    edges.push_back(std::move(e));
  }
  try {
    return Instance(directed.get<bool>(), require_int(doc, "nodes", ""), mode, require_int(doc, "source", ""),
                    require_int(doc, "target_or_root", ""), require_int(doc, "agents", ""), std::move(edges));
  } catch (const InvalidInstance& e) {
    throw ParseError("instance", e.what());
  }
}

std::string write_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance read_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  return instance_from_json(doc);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_instance(buf.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << write_instance(inst);
}

}  // namespace mmech
