// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "vrcontour/label_volume.hpp"
#include "vrcontour/serialization.hpp"
#include "vrcontour/volume.hpp"

namespace vrc {

/// Path of the binary payload that pairs with a `<name>.json` volume header.
std::filesystem::path raw_path_for(const std::filesystem::path& header);

/// Writes `<name>.json` {dims, spacing_mm, dtype:"f32", raw_range} and the
/// little-endian, x-fastest `<name>.raw` of normalized densities.
void save_volume(const std::filesystem::path& header, const Volume& volume);

/// Reads a volume pair. "f32" payloads must already be normalized; "u16"
/// payloads hold raw values and are min-max normalized on load.
/// Throws CorruptFile naming the bad field, IoError if a file is missing.
Volume load_volume(const std::filesystem::path& header);

Json mask_to_json(const LabelVolume& mask);
LabelVolume mask_from_json(const Json& j);

/// `<name>.mask.json`: {dims, rle}. Round trips bit-exactly.
void save_mask(const std::filesystem::path& path, const LabelVolume& mask);
LabelVolume load_mask(const std::filesystem::path& path);

/// Raw little-endian grid of "u16" or "f32" values; normalized on import.
Volume import_raw(const std::filesystem::path& raw, Dims dims, const std::string& dtype,
                  Vec3 spacing);

/// Directory of equally sized binary PGM (P5) slices, stacked along z in
/// file-name order. Throws CorruptFile on mixed sizes or unreadable files.
Volume import_pgm_stack(const std::filesystem::path& directory, Vec3 spacing);

/// 8- or 16-bit binary PGM writer; used to produce slice stacks.
void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint16_t>& values, int max_value);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
Json read_json(const std::filesystem::path& path);

}  // namespace vrc
