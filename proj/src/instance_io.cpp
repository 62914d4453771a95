#include "iorsp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "detail/json_fields.hpp"

namespace iorsp {

using namespace detail;

namespace detail {

Surgery parse_surgery(const json& s, const std::string& path) {
  if (!s.is_object()) field_error(path, "expected object");
  Surgery surgery;
  surgery.id = as_string(require(s, "id", path), path + ".id");
  surgery.priority = static_cast<int>(int_or(s, "priority", 0, path));
  const json& tasks = array_field(s, "tasks", path);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::string tpath = path + ".tasks[" + std::to_string(t) + "]";
    const json& task = tasks[t];
    if (!task.is_object()) field_error(tpath, "expected object");
    TaskSpec spec;
    spec.duration = as_int(require(task, "duration", tpath), tpath + ".duration");
    spec.moving = int_or(task, "moving", 0, tpath);
    spec.cleaning = int_or(task, "cleaning", 0, tpath);
    spec.rooms = string_list(task, "rooms", tpath);
    spec.equipment_types = string_list(task, "equipment_types", tpath);
    spec.people = string_list(task, "people", tpath);
    surgery.tasks.push_back(std::move(spec));
  }
  return surgery;
}

ordered_json surgery_json(const Surgery& s) {
  ordered_json js;
  js["id"] = s.id;
  js["priority"] = s.priority;
  ordered_json tasks = ordered_json::array();
  for (const TaskSpec& t : s.tasks) {
    ordered_json jt;
    jt["duration"] = t.duration;
    jt["moving"] = t.moving;
    jt["cleaning"] = t.cleaning;
    jt["rooms"] = t.rooms;
    jt["equipment_types"] = t.equipment_types;
    jt["people"] = t.people;
    tasks.push_back(std::move(jt));
  }
  js["tasks"] = std::move(tasks);
  return js;
}

}  // namespace detail

Instance load_instance(std::string_view document) {
  const json doc = parse_document(document, "instance document");
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

  Instance inst;
  const std::string root = "$";
  if (auto it = doc.find("name"); it != doc.end()) inst.name = as_string(*it, root + ".name");
  if (auto it = doc.find("seed"); it != doc.end()) {
    inst.seed = static_cast<std::uint64_t>(as_int(*it, root + ".seed"));
  }
  inst.horizon = int_or(doc, "horizon_minutes", 0, root);
  inst.blocking_limit = int_or(doc, "blocking_limit", kDefaultBlockingLimit, root);

  const json& resources = array_field(doc, "resources", root);
  for (std::size_t i = 0; i < resources.size(); ++i) {
    const std::string path = root + ".resources[" + std::to_string(i) + "]";
    const json& r = resources[i];
    if (!r.is_object()) field_error(path, "expected object");
    Resource res;
    res.id = as_string(require(r, "id", path), path + ".id");
    const std::string kind = as_string(require(r, "kind", path), path + ".kind");
    auto parsed = parse_resource_kind(kind);
    if (!parsed) field_error(path + ".kind", "unknown resource kind '" + kind + "'");
    res.kind = *parsed;
    if (auto it = r.find("equipment_type"); it != r.end() && !it->is_null()) {
      res.equipment_type = as_string(*it, path + ".equipment_type");
    }
    if (auto it = r.find("slots"); it != r.end()) {
      if (!it->is_array()) field_error(path + ".slots", "expected array");
      std::vector<Instant> w;
      for (std::size_t j = 0; j < it->size(); ++j) {
        w.push_back(as_int((*it)[j], path + ".slots[" + std::to_string(j) + "]"));
      }
      res.slots = AvailabilitySlots(std::move(w));
    }
    inst.resources.push_back(std::move(res));
  }

  const json& surgeries = array_field(doc, "surgeries", root);
  for (std::size_t i = 0; i < surgeries.size(); ++i) {
    inst.surgeries.push_back(parse_surgery(surgeries[i], root + ".surgeries[" + std::to_string(i) + "]"));
  }
  return inst;
}

std::string save_instance(const Instance& inst) {
  ordered_json doc;
  doc["name"] = inst.name;
  doc["seed"] = inst.seed;
  doc["horizon_minutes"] = inst.horizon;
  doc["blocking_limit"] = inst.blocking_limit;
  ordered_json resources = ordered_json::array();
  for (const Resource& res : inst.resources) {
    ordered_json r;
    r["id"] = res.id;
    r["kind"] = std::string(to_string(res.kind));
    if (res.equipment_type) r["equipment_type"] = *res.equipment_type;
    r["slots"] = res.slots.instants();
    resources.push_back(std::move(r));
  }
  doc["resources"] = std::move(resources);
  ordered_json surgeries = ordered_json::array();
  for (const Surgery& s : inst.surgeries) surgeries.push_back(surgery_json(s));
  doc["surgeries"] = std::move(surgeries);
  return doc.dump(1) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Instance load_instance_file(const std::filesystem::path& path) {
  return load_instance(read_text_file(path));
}

void save_instance_file(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, save_instance(inst));
}

}  // namespace iorsp
