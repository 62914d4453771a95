#pragma once

// Field readers shared by the JSON loaders. Errors name the JSON path.

#include <string>
#include <vector>

#include "iorsp/instance_io.hpp"
#include "iorsp/schedule_io.hpp"
#include "json.hpp"

namespace iorsp::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Defined in instance_io.cpp.
Surgery parse_surgery(const json& s, const std::string& path);
ordered_json surgery_json(const Surgery& s);
ordered_json schedule_entry_json(const ScheduleDocument::Entry& entry);

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field " + path + ": " + what);
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

inline std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) field_error(path, "expected integer");
  return v.get<std::int64_t>();
}

inline double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected number");
  return v.get<double>();
}

inline double double_or(const json& obj, const char* key, double fallback, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as_double(*it, path + "." + key);
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) field_error(path, "expected string");
  return v.get<std::string>();
}

inline std::vector<std::string> string_list(const json& obj, const char* key, const std::string& path) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  const std::string here = path + "." + key;
  if (!it->is_array()) field_error(here, "expected array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    out.push_back(as_string((*it)[i], here + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::int64_t int_or(const json& obj, const char* key, std::int64_t fallback, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as_int(*it, path + "." + key);
}

inline const json& array_field(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) field_error(path + "." + key, "expected array");
  return v;
}

inline json parse_document(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

// {id, tasks:[{room, equipment, start, end?, blocking?, clean_end?}]}
inline ScheduleDocument::Entry parse_schedule_entry(const json& s, const std::string& path) {
  if (!s.is_object()) field_error(path, "expected object");
  ScheduleDocument::Entry entry;
  entry.id = as_string(require(s, "id", path), path + ".id");
  const json& tasks = array_field(s, "tasks", path);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::string tpath = path + ".tasks[" + std::to_string(t) + "]";
    const json& jt = tasks[t];
    if (!jt.is_object()) field_error(tpath, "expected object");
    ScheduleDocument::Task task;
    task.room = as_string(require(jt, "room", tpath), tpath + ".room");
    task.equipment = string_list(jt, "equipment", tpath);
    task.start = as_int(require(jt, "start", tpath), tpath + ".start");
    task.end = int_or(jt, "end", task.start, tpath);
    task.blocking = int_or(jt, "blocking", 0, tpath);
    task.clean_end = int_or(jt, "clean_end", task.end, tpath);
    entry.tasks.push_back(std::move(task));
  }
  return entry;
}

}  // namespace iorsp::detail
