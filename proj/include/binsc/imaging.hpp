// Copyright 2026 binsc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BINSC_IMAGING_HPP
#define BINSC_IMAGING_HPP

#include <string>
#include <vector>

#include "binsc/qubo.hpp"

namespace binsc {

inline constexpr int kImageSide = 28;
inline constexpr int kPatchSide = 7;
inline constexpr int kPatchGrid = 4;                        // 4x4 patches
inline constexpr int kPatchCount = kPatchGrid * kPatchGrid;  // 16
inline constexpr int kPatchDim = kPatchSide * kPatchSide;    // 49

/// 28x28 grayscale images with intensities normalized to [0, 1].
struct ImageSet {
    std::vector<Matrix> images;

    std::size_t count() const { return images.size(); }
};

/// The sixteen 7x7 patches of one image, flattened row-major into the
/// columns of a 49x16 matrix. Column 4*r + c is grid position (r, c).
struct PatchGrid {
    Matrix patches;

    Vector patch(int grid_row, int grid_col) const {
        return patches.col(grid_row * kPatchGrid + grid_col);
    }
};

/// Loads an IDX3 image file (magic 0x00000803, big-endian dimensions),
/// transparently decompressing gzip input, and scales pixels by 1/255.
/// Rejects non-28x28 files and truncated payloads with a format error
/// naming the offending field.
ImageSet load_idx(const std::string& path);

/// Splits a 28x28 image into the non-overlapping 4x4 grid of 7x7 blocks;
/// patch (r, c) covers pixel rows 7r..7r+6 and columns 7c..7c+6.
PatchGrid patchify(const Matrix& image);

/// Exact inverse of patchify.
Matrix unpatchify(const PatchGrid& grid);

/// ASCII PGM (P2) export; values are clamped to [0, 1] and scaled to 255.
void write_pgm(const Matrix& image, const std::string& path);

/// Writes a (count x 28 x 28)-shaped IDX3 file, optionally gzipped. Used to
/// build fixtures and synthetic datasets that exercise the loader.
void save_idx(const ImageSet& set, const std::string& path,
              bool gzip = false);

}  // namespace binsc

#endif  // BINSC_IMAGING_HPP
