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

#include "diamond/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace diamond::io {

namespace {

constexpr std::array<char, 5> kMagic{'D', 'I', 'A', 'Q', '1'};

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(bytes.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    std::array<char, sizeof(T)> bytes;
    if (!in.read(bytes.data(), sizeof(T))) throw FormatError("truncated DiaQ file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

Format format_from_path(const std::filesystem::path& path) {
    const std::string ext = lower(path.extension().string());
    if (ext == ".diaq" || ext == ".bin") return Format::diaq_binary;
    if (ext == ".json") return Format::diaq_json;
    if (ext == ".mtx") return Format::matrix_market;
    throw UsageError("cannot infer matrix format from '" + path.string() + "' (use .diaq, .json or .mtx)");
}

// ---------------------------------------------------------------------------
// DiaQ binary
// ---------------------------------------------------------------------------

void write_diaq_binary(std::ostream& out, const DiagMatrix& m) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.dim()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.nnzd()));
    for (const Diagonal& d : m.diagonals()) {
        put_le<std::int64_t>(out, d.offset);
        for (const Scalar& v : d.values) {
            put_le<double>(out, v.real());
            put_le<double>(out, v.imag());
        }
    }
}

DiagMatrix read_diaq_binary(std::istream& in) {
    std::array<char, 5> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("not a DiaQ file (bad magic)");
    const auto n = get_le<std::uint64_t>(in);
    const auto count = get_le<std::uint64_t>(in);
    if (n == 0 || n > (std::uint64_t{1} << 40)) throw FormatError("implausible DiaQ dimension");
    if (count > 2 * n - 1) throw FormatError("more diagonals than a matrix of this size can hold");
    std::vector<Diagonal> diags;
    diags.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        Diagonal d;
        d.offset = get_le<std::int64_t>(in);
        const Index len = diag_length(static_cast<Index>(n), d.offset);
        d.values.resize(static_cast<std::size_t>(len));
        for (Scalar& v : d.values) {
            const double re = get_le<double>(in);
            const double im = get_le<double>(in);
            v = {re, im};
        }
        diags.push_back(std::move(d));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after DiaQ payload");
    try {
        return DiagMatrix(static_cast<Index>(n), std::move(diags));
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid DiaQ content: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// DiaQ JSON
// ---------------------------------------------------------------------------

std::string to_diaq_json(const DiagMatrix& m) {
    nlohmann::json j;
    j["n"] = m.dim();
    nlohmann::json diags = nlohmann::json::array();
    for (const Diagonal& d : m.diagonals()) {
        nlohmann::json values = nlohmann::json::array();
        for (const Scalar& v : d.values) values.push_back({v.real(), v.imag()});
        diags.push_back({{"offset", d.offset}, {"values", std::move(values)}});
    }
    j["diags"] = std::move(diags);
    return j.dump() + "\n";
}

DiagMatrix from_diaq_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const Index n = j.at("n").get<Index>();
        std::vector<Diagonal> diags;
        for (const auto& item : j.at("diags")) {
            Diagonal d;
            d.offset = item.at("offset").get<Index>();
            for (const auto& pair : item.at("values")) {
                if (!pair.is_array() || pair.size() != 2) throw FormatError("each value must be a [re, im] pair");
                d.values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
            }
            diags.push_back(std::move(d));
        }
        return DiagMatrix(n, std::move(diags));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad DiaQ JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid DiaQ JSON content: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Matrix Market
// ---------------------------------------------------------------------------

void write_matrix_market(std::ostream& out, const DiagMatrix& m) {
    bool real = true;
    for (const Diagonal& d : m.diagonals())
        for (const Scalar& v : d.values) real = real && v.imag() == 0.0;

    // Column-major entry order, the customary layout for coordinate files.
    std::vector<std::tuple<Index, Index, Scalar>> entries;
    for (const Diagonal& d : m.diagonals()) {
        const Index r0 = first_row(d.offset);
        for (std::size_t k = 0; k < d.values.size(); ++k) {
            if (d.values[k] == Scalar{}) continue;
            const Index i = r0 + static_cast<Index>(k);
            entries.emplace_back(i, i + d.offset, d.values[k]);
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
    });

    out << "%%MatrixMarket matrix coordinate " << (real ? "real" : "complex") << " general\n";
    out << m.dim() << ' ' << m.dim() << ' ' << entries.size() << '\n';
    out << std::setprecision(17);
    for (const auto& [i, j, v] : entries) {
        out << (i + 1) << ' ' << (j + 1) << ' ' << v.real();
        if (!real) out << ' ' << v.imag();
        out << '\n';
    }
}

DiagMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty Matrix Market stream");
    std::istringstream banner(line);
    std::string tag, object, layout, field, symmetry;
    banner >> tag >> object >> layout >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix")
        throw FormatError("missing %%MatrixMarket matrix banner");
    layout = lower(layout);
    field = lower(field);
    symmetry = lower(symmetry);
    if (layout != "coordinate") throw FormatError("only coordinate Matrix Market files are supported");
    if (field != "real" && field != "integer" && field != "complex" && field != "pattern" && field != "double")
        throw FormatError("unsupported Matrix Market field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" && symmetry != "hermitian")
        throw FormatError("unsupported Matrix Market symmetry '" + symmetry + "'");

    do {
        if (!std::getline(in, line)) throw FormatError("missing Matrix Market size line");
    } while (line.empty() || line[0] == '%');
    Index rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz)) throw FormatError("bad Matrix Market size line");
    }
    if (rows != cols) throw ShapeError("Matrix Market matrix is not square");
    if (rows < 1) throw FormatError("Matrix Market dimension must be positive");

    std::map<Index, std::vector<Scalar>> acc;
    auto add = [&](Index i, Index j, Scalar v) {
        const Index d = j - i;
        auto [it, fresh] = acc.try_emplace(d);
        if (fresh) it->second.assign(static_cast<std::size_t>(diag_length(rows, d)), Scalar{});
        it->second[static_cast<std::size_t>(i - first_row(d))] += v;
    };

    Index seen = 0;
    while (seen < nnz && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream es(line);
        Index i = 0, j = 0;
        double re = 1.0, im = 0.0;
        if (!(es >> i >> j)) throw FormatError("bad Matrix Market entry: " + line);
        if (field != "pattern" && !(es >> re)) throw FormatError("missing value: " + line);
        if (field == "complex" && !(es >> im)) throw FormatError("missing imaginary part: " + line);
        if (i < 1 || j < 1 || i > rows || j > cols) throw FormatError("entry index out of range: " + line);
        --i;
        --j;
        const Scalar v{re, im};
        add(i, j, v);
        if (i != j) {
            if (symmetry == "symmetric") add(j, i, v);
            else if (symmetry == "skew-symmetric") add(j, i, -v);
            else if (symmetry == "hermitian") add(j, i, std::conj(v));
        }
        ++seen;
    }
    if (seen != nnz) throw FormatError("Matrix Market file ended after " + std::to_string(seen) + " of " +
                                       std::to_string(nnz) + " entries");

    std::vector<Diagonal> diags;
    for (auto& [d, values] : acc) diags.push_back(Diagonal{d, std::move(values)});
    return drop_zero_diagonals(DiagMatrix(rows, std::move(diags)), 0.0);
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write '" + tmp.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw FormatError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw FormatError("cannot move output into place at '" + path.string() + "'");
    }
}

DiagMatrix load_matrix(const std::filesystem::path& path) { return load_matrix(path, format_from_path(path)); }

DiagMatrix load_matrix(const std::filesystem::path& path, Format format) {
    switch (format) {
    case Format::diaq_binary: {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw FormatError("cannot open '" + path.string() + "'");
        return read_diaq_binary(in);
    }
    case Format::diaq_json:
        return from_diaq_json(read_file(path));
    case Format::matrix_market: {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot open '" + path.string() + "'");
        return read_matrix_market(in);
    }
    }
    throw UsageError("unknown format");
}

void save_matrix(const std::filesystem::path& path, const DiagMatrix& m) { save_matrix(path, m, format_from_path(path)); }

void save_matrix(const std::filesystem::path& path, const DiagMatrix& m, Format format) {
    std::ostringstream out(std::ios::binary);
    switch (format) {
    case Format::diaq_binary:
        write_diaq_binary(out, m);
        break;
    case Format::diaq_json:
        out << to_diaq_json(m);
        break;
    case Format::matrix_market:
        write_matrix_market(out, m);
        break;
    }
    write_file_atomic(path, out.str());
}

}  // namespace diamond::io
