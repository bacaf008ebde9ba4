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

#include "binsc/imaging.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace binsc {

namespace {

constexpr std::uint32_t kIdx3Magic = 0x00000803;

std::uint32_t read_be32(const unsigned char* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void write_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

struct GzCloser {
    void operator()(gzFile f) const {
        if (f) gzclose(f);
    }
};

using GzHandle = std::unique_ptr<gzFile_s, GzCloser>;

void read_exact(gzFile f, unsigned char* buffer, std::size_t count,
                const std::string& path, const char* field) {
    std::size_t done = 0;
    while (done < count) {
        const unsigned chunk = static_cast<unsigned>(
            std::min<std::size_t>(count - done, 1u << 20));
        const int got = gzread(f, buffer + done, chunk);
        if (got <= 0)
            throw std::runtime_error("load_idx: " + path +
                                     ": truncated while reading " + field);
        done += static_cast<std::size_t>(got);
    }
}

}  // namespace

ImageSet load_idx(const std::string& path) {
    // gzread transparently handles both gzip and plain files.
    GzHandle file(gzopen(path.c_str(), "rb"));
    if (!file)
        throw std::runtime_error("load_idx: cannot open " + path);

    unsigned char header[16];
    read_exact(file.get(), header, sizeof header, path, "header");

    const std::uint32_t magic = read_be32(header);
    if (magic != kIdx3Magic) {
        char hex[16];
        std::snprintf(hex, sizeof hex, "0x%08x", magic);
        throw std::runtime_error("load_idx: " + path + ": bad magic " + hex +
                                 " in field magic (expected 0x00000803)");
    }
    const std::uint32_t count = read_be32(header + 4);
    const std::uint32_t rows = read_be32(header + 8);
    const std::uint32_t cols = read_be32(header + 12);
    if (rows != kImageSide)
        throw std::runtime_error("load_idx: " + path + ": field rows is " +
                                 std::to_string(rows) + ", expected 28");
    if (cols != kImageSide)
        throw std::runtime_error("load_idx: " + path + ": field cols is " +
                                 std::to_string(cols) + ", expected 28");

    const std::size_t pixels_per_image =
        static_cast<std::size_t>(kImageSide) * kImageSide;
    std::vector<unsigned char> pixels(pixels_per_image);

    ImageSet set;
    set.images.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        read_exact(file.get(), pixels.data(), pixels.size(), path,
                   "image data");
        Matrix image(kImageSide, kImageSide);
        for (int r = 0; r < kImageSide; ++r)
            for (int c = 0; c < kImageSide; ++c)
                image(r, c) =
                    pixels[static_cast<std::size_t>(r) * kImageSide + c] /
                    255.0;
        set.images.push_back(std::move(image));
    }
    return set;
}

PatchGrid patchify(const Matrix& image) {
    if (image.rows() != kImageSide || image.cols() != kImageSide)
        throw std::invalid_argument(
            "patchify: expected a 28x28 image, got " +
            std::to_string(image.rows()) + "x" + std::to_string(image.cols()));

    PatchGrid grid;
    grid.patches.resize(kPatchDim, kPatchCount);
    for (int r = 0; r < kPatchGrid; ++r)
        for (int c = 0; c < kPatchGrid; ++c)
            for (int pr = 0; pr < kPatchSide; ++pr)
                for (int pc = 0; pc < kPatchSide; ++pc)
                    grid.patches(pr * kPatchSide + pc, r * kPatchGrid + c) =
                        image(r * kPatchSide + pr, c * kPatchSide + pc);
    return grid;
}

Matrix unpatchify(const PatchGrid& grid) {
    if (grid.patches.rows() != kPatchDim || grid.patches.cols() != kPatchCount)
        throw std::invalid_argument(
            "unpatchify: expected a 49x16 patch grid, got " +
            std::to_string(grid.patches.rows()) + "x" +
            std::to_string(grid.patches.cols()));

    Matrix image(kImageSide, kImageSide);
    for (int r = 0; r < kPatchGrid; ++r)
        for (int c = 0; c < kPatchGrid; ++c)
            for (int pr = 0; pr < kPatchSide; ++pr)
                for (int pc = 0; pc < kPatchSide; ++pc)
                    image(r * kPatchSide + pr, c * kPatchSide + pc) =
                        grid.patches(pr * kPatchSide + pc, r * kPatchGrid + c);
    return image;
}

void write_pgm(const Matrix& image, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    out << "P2\n" << image.cols() << " " << image.rows() << "\n255\n";
    for (Eigen::Index r = 0; r < image.rows(); ++r) {
        for (Eigen::Index c = 0; c < image.cols(); ++c) {
            const double v = std::min(1.0, std::max(0.0, image(r, c)));
            if (c) out << ' ';
            out << static_cast<int>(std::lround(v * 255.0));
        }
        out << '\n';
    }
}

void save_idx(const ImageSet& set, const std::string& path, bool gzip) {
    std::vector<unsigned char> payload;
    payload.reserve(16 + set.count() * kImageSide * kImageSide);
    write_be32(payload, kIdx3Magic);
    write_be32(payload, static_cast<std::uint32_t>(set.count()));
    write_be32(payload, kImageSide);
    write_be32(payload, kImageSide);
    for (const Matrix& image : set.images) {
        if (image.rows() != kImageSide || image.cols() != kImageSide)
            throw std::invalid_argument("save_idx: images must be 28x28");
        for (int r = 0; r < kImageSide; ++r)
            for (int c = 0; c < kImageSide; ++c) {
                const double v = std::min(1.0, std::max(0.0, image(r, c)));
                payload.push_back(static_cast<unsigned char>(
                    std::lround(v * 255.0)));
            }
    }

    if (gzip) {
        GzHandle out(gzopen(path.c_str(), "wb"));
        if (!out)
            throw std::runtime_error("save_idx: cannot open " + path);
        if (gzwrite(out.get(), payload.data(),
                    static_cast<unsigned>(payload.size())) !=
            static_cast<int>(payload.size()))
            throw std::runtime_error("save_idx: short write to " + path);
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("save_idx: cannot open " + path);
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
        if (!out) throw std::runtime_error("save_idx: short write to " + path);
    }
}

}  // namespace binsc
