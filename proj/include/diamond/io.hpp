/*
 * Copyright 2026 The DIAMOND-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file io.hpp
 * @brief DiaQ binary / JSON and Matrix Market serialization.
 *
 * DiaQ binary layout (all integers and doubles little-endian):
 *
 *   "DIAQ1"            5 bytes magic
 *   u64 N
 *   u64 diagonal count
 *   per diagonal, ascending offset:
 *     i64 offset
 *     (N - |offset|) x (f64 re, f64 im)
 *
 * DiaQ JSON: {"n": N, "diags": [{"offset": d, "values": [[re, im], ...]}, ...]}
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "diamond/diag_matrix.hpp"

namespace diamond::io {

enum class Format { diaq_binary, diaq_json, matrix_market };

/// Format implied by a file extension (.diaq, .json, .mtx).
Format format_from_path(const std::filesystem::path& path);

void write_diaq_binary(std::ostream& out, const DiagMatrix& m);
DiagMatrix read_diaq_binary(std::istream& in);

std::string to_diaq_json(const DiagMatrix& m);
DiagMatrix from_diaq_json(const std::string& text);

/// Coordinate format, "complex general" unless every entry is real, in which
/// case "real general" is written.
void write_matrix_market(std::ostream& out, const DiagMatrix& m);
/// Accepts coordinate real / integer / complex / pattern with general,
/// symmetric, skew-symmetric or hermitian symmetry. Square only.
DiagMatrix read_matrix_market(std::istream& in);

DiagMatrix load_matrix(const std::filesystem::path& path);
DiagMatrix load_matrix(const std::filesystem::path& path, Format format);
void save_matrix(const std::filesystem::path& path, const DiagMatrix& m);
void save_matrix(const std::filesystem::path& path, const DiagMatrix& m, Format format);

/// Write to a sibling temporary and rename over `path`, so a failed write
/// never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace diamond::io
