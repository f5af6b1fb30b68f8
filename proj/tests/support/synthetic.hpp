#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "newsclf/pipeline.hpp"

namespace newsclf::testing {

/// Writes a keyword-separable corpus as the three source CSVs: real
/// headlines draw class words only from one pool and fake headlines only
/// from a disjoint pool, padded with shared filler words.
SourcePaths write_separable_corpus(const std::filesystem::path& dir, std::size_t n_real, std::size_t n_fake,
                                   std::uint64_t seed);

/// Fresh empty directory under the build tree.
std::filesystem::path scratch_dir(const std::string& name);

std::filesystem::path fixture_dir();

/// Paths of the bundled 40-headline corpus.
SourcePaths tiny_sources();

}  // namespace newsclf::testing
