// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "vrcontour/error.hpp"

namespace fs = std::filesystem;

namespace vrc {

namespace {

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string(), path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing", path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string(), path.string());
}

std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

Dims dims_from_json(const Json& j, ErrorCode code) {
  if (!j.is_array() || j.size() != 3) throw Error(code, "'dims' must be [nx, ny, nz]", "dims");
  Dims d;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 1 || j[i].get<long long>() > (1 << 16)) {
      throw Error(code, "'dims' entries must be integers in [1, 65536]", "dims");
    }
  }
  d.nx = j[0].get<int>();
  d.ny = j[1].get<int>();
  d.nz = j[2].get<int>();
  return d;
}

Json dims_to_json(const Dims& d) { return Json::array({d.nx, d.ny, d.nz}); }

// Re-raises parse problems inside a file as CorruptFile, keeping the field.
template <typename F>
auto as_corrupt(const fs::path& path, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::DimensionMismatch) {
      throw Error(ErrorCode::CorruptFile, path.filename().string() + ": " + e.what(), e.field());
    }
    throw;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::CorruptFile, path.filename().string() + ": " + e.what(),
                path.filename().string());
  }
}

}  // namespace

std::string read_text(const fs::path& path) {
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, {text.begin(), text.end()});
}

Json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::CorruptFile, path.filename().string() + ": " + e.what(),
                path.filename().string());
  }
}

fs::path raw_path_for(const fs::path& header) {
  fs::path raw = header;
  raw.replace_extension(".raw");
  return raw;
}

void save_volume(const fs::path& header, const Volume& volume) {
  const Json meta = {{"dims", dims_to_json(volume.dims())},
                     {"spacing_mm", to_json(volume.spacing())},
                     {"dtype", "f32"},
                     {"raw_range", Json::array({volume.raw_range().min, volume.raw_range().max})}};
  write_text(header, meta.dump(2) + "\n");

  const auto densities = volume.densities();
  std::vector<std::uint8_t> bytes(densities.size() * 4);
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(densities[i]);
    for (int b = 0; b < 4; ++b) bytes[i * 4 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  write_bytes(raw_path_for(header), bytes);
}

Volume load_volume(const fs::path& header) {
  const Json meta = read_json(header);
  return as_corrupt(header, [&] {
    const Dims dims = dims_from_json(require(meta, "dims"), ErrorCode::CorruptFile);
    const Vec3 spacing = vec3_from_json(require(meta, "spacing_mm"), "spacing_mm");
    const Json& dtype_json = require(meta, "dtype");
    if (!dtype_json.is_string()) throw Error(ErrorCode::CorruptFile, "'dtype' must be a string", "dtype");
    const std::string dtype = dtype_json.get<std::string>();
    RawRange range;
    if (meta.contains("raw_range")) {
      const Vec2 r = vec2_from_json(meta.at("raw_range"), "raw_range");
      range = {r.x, r.y};
    }

    const fs::path raw = raw_path_for(header);
    if (dtype == "u16") return import_raw(raw, dims, dtype, spacing);
    if (dtype != "f32") throw Error(ErrorCode::CorruptFile, "unsupported dtype '" + dtype + "'", "dtype");

    const auto bytes = read_bytes(raw);
    if (bytes.size() != dims.voxel_count() * 4) {
      throw Error(ErrorCode::CorruptFile,
                  raw.filename().string() + " holds " + std::to_string(bytes.size()) +
                      " bytes, expected " + std::to_string(dims.voxel_count() * 4),
                  "raw");
    }
    std::vector<float> densities(dims.voxel_count());
    for (std::size_t i = 0; i < densities.size(); ++i) {
      densities[i] = std::bit_cast<float>(load_le32(&bytes[i * 4]));
      if (!(densities[i] >= 0.0F && densities[i] <= 1.0F)) {
        throw Error(ErrorCode::CorruptFile, "f32 densities must be normalized to [0, 1]", "raw");
      }
    }
    return Volume(dims, spacing, std::move(densities), range);
  });
}

Json mask_to_json(const LabelVolume& mask) {
  return {{"dims", dims_to_json(mask.dims())}, {"rle", encode_rle(mask.bits())}};
}

LabelVolume mask_from_json(const Json& j) {
  const Dims dims = dims_from_json(require(j, "dims"), ErrorCode::CorruptFile);
  const Json& rle = require(j, "rle");
  if (!rle.is_array()) throw Error(ErrorCode::CorruptFile, "'rle' must be an array", "rle");
  std::vector<std::uint64_t> runs;
  runs.reserve(rle.size());
  for (const Json& r : rle) {
    if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<long long>() >= 0)) {
      throw Error(ErrorCode::CorruptFile, "'rle' entries must be non-negative integers", "rle");
    }
    runs.push_back(r.get<std::uint64_t>());
  }
  return LabelVolume(dims, decode_rle(runs, dims.voxel_count()));
}

void save_mask(const fs::path& path, const LabelVolume& mask) {
  write_text(path, mask_to_json(mask).dump() + "\n");
}

LabelVolume load_mask(const fs::path& path) {
  const Json j = read_json(path);
  return as_corrupt(path, [&] { return mask_from_json(j); });
}

Volume import_raw(const fs::path& raw, Dims dims, const std::string& dtype, Vec3 spacing) {
  const auto bytes = read_bytes(raw);
  const std::size_t width = dtype == "u16" ? 2 : (dtype == "f32" ? 4 : 0);
  if (width == 0) throw Error(ErrorCode::InvalidArgument, "dtype must be u16 or f32", "dtype");
  if (bytes.size() != dims.voxel_count() * width) {
    throw Error(ErrorCode::CorruptFile,
                raw.filename().string() + " holds " + std::to_string(bytes.size()) +
                    " bytes, expected " + std::to_string(dims.voxel_count() * width),
                "raw");
  }
  std::vector<double> values(dims.voxel_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (width == 2) {
      values[i] = static_cast<double>(std::uint16_t{bytes[2 * i]} |
                                      static_cast<std::uint16_t>(bytes[2 * i + 1] << 8));
    } else {
      values[i] = static_cast<double>(std::bit_cast<float>(load_le32(&bytes[4 * i])));
    }
  }
  return normalize_minmax(values, dims, spacing);
}

namespace {

struct Pgm {
  int width = 0;
  int height = 0;
  std::vector<double> values;
};

Pgm read_pgm(const fs::path& path) {
  const auto bytes = read_bytes(path);
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::CorruptFile, path.filename().string() + ": " + why,
                 path.filename().string());
  };
  const auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  const auto read_int = [&] {
    skip_space();
    long value = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos]) && digits < 9) {
      value = value * 10 + (bytes[pos++] - '0');
      ++digits;
    }
    if (digits == 0) throw fail("bad header");
    return static_cast<int>(value);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw fail("not a binary PGM (P5)");
  pos = 2;
  Pgm pgm;
  pgm.width = read_int();
  pgm.height = read_int();
  const int max_value = read_int();
  if (pgm.width < 1 || pgm.height < 1 || max_value < 1 || max_value > 65535) throw fail("bad header");
  ++pos;  // single whitespace before the raster
  const std::size_t sample_bytes = max_value < 256 ? 1 : 2;
  const std::size_t count = static_cast<std::size_t>(pgm.width) * pgm.height;
  if (bytes.size() < pos + count * sample_bytes) throw fail("truncated raster");
  pgm.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (sample_bytes == 1) {
      pgm.values[i] = bytes[pos + i];
    } else {
      pgm.values[i] = (bytes[pos + 2 * i] << 8) | bytes[pos + 2 * i + 1];
    }
  }
  return pgm;
}

}  // namespace

Volume import_pgm_stack(const fs::path& directory, Vec3 spacing) {
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::IoError, directory.string() + " is not a directory", directory.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::CorruptFile, "no .pgm slices in " + directory.string(), "stack");

  std::vector<double> values;
  int width = 0;
  int height = 0;
  for (const fs::path& file : files) {
    Pgm pgm = read_pgm(file);
    if (values.empty()) {
      width = pgm.width;
      height = pgm.height;
    } else if (pgm.width != width || pgm.height != height) {
      throw Error(ErrorCode::CorruptFile,
                  file.filename().string() + " is " + std::to_string(pgm.width) + "x" +
                      std::to_string(pgm.height) + ", stack is " + std::to_string(width) + "x" +
                      std::to_string(height),
                  file.filename().string());
    }
    values.insert(values.end(), pgm.values.begin(), pgm.values.end());
  }
  return normalize_minmax(values, Dims{width, height, static_cast<int>(files.size())}, spacing);
}

void write_pgm(const fs::path& path, int width, int height, const std::vector<std::uint16_t>& values,
               int max_value) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::DimensionMismatch, "pgm raster size mismatch", "values");
  }
  const std::string header =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" + std::to_string(max_value) + "\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  for (std::uint16_t v : values) {
    if (max_value >= 256) bytes.push_back(static_cast<std::uint8_t>(v >> 8));
    bytes.push_back(static_cast<std::uint8_t>(v & 0xFF));
  }
  write_bytes(path, bytes);
}

}  // namespace vrc
