#pragma once

#include "ir.hpp"

#include <stdexcept>
#include <string>

namespace qpf::frontend {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

struct EmitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Format chosen by extension (.qc / .qasm) unless forced.
ir::Program parse_file(const std::string& path);
ir::Program parse_string(const std::string& text, ir::SourceFormat fmt);

std::string emit(const ir::Program& p);  // in the program's own format
std::string emit(const ir::Program& p, ir::SourceFormat fmt);

}  // namespace qpf::frontend
