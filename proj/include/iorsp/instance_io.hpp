#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iorsp/model.hpp"

namespace iorsp {

// Syntax or shape errors in an instance document. Semantic problems are
// left to validate_instance().
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance load_instance(std::string_view document);
std::string save_instance(const Instance& inst);

Instance load_instance_file(const std::filesystem::path& path);
void save_instance_file(const Instance& inst, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace iorsp
