// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peppy {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* kind() const { return "Error"; }
};

#define PEPPY_DEFINE_ERROR(NAME)                                  \
  struct NAME : Error {                                           \
    explicit NAME(const std::string& msg) : Error(msg) {}         \
    const char* kind() const override { return #NAME; }           \
  }

PEPPY_DEFINE_ERROR(UnknownResidue);
PEPPY_DEFINE_ERROR(EmptyChain);
PEPPY_DEFINE_ERROR(UnknownConformation);
PEPPY_DEFINE_ERROR(EmptyStructure);
PEPPY_DEFINE_ERROR(UnknownChain);
PEPPY_DEFINE_ERROR(ChainTooShort);
PEPPY_DEFINE_ERROR(DegenerateDihedral);
PEPPY_DEFINE_ERROR(ShapeMismatch);
PEPPY_DEFINE_ERROR(BadFeature);
PEPPY_DEFINE_ERROR(BadBinning);
PEPPY_DEFINE_ERROR(BadFormat);
PEPPY_DEFINE_ERROR(InvalidMesh);
PEPPY_DEFINE_ERROR(UnsupportedVersion);
PEPPY_DEFINE_ERROR(ConfigError);

#undef PEPPY_DEFINE_ERROR

/// Parse failure in fixed-column PDB input; carries the 1-based line number.
struct MalformedRecord : Error {
  std::size_t line;
  MalformedRecord(std::size_t line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  const char* kind() const override { return "MalformedRecord"; }
};

/// Syntax or schema failure in a PBM document; carries the byte offset.
struct MalformedPBM : Error {
  std::size_t position;
  MalformedPBM(std::size_t pos, const std::string& msg)
      : Error("byte " + std::to_string(pos) + ": " + msg), position(pos) {}
  const char* kind() const override { return "MalformedPBM"; }
};

}  // namespace peppy
