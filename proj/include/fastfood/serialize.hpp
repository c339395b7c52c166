#pragma once

#include <string>

#include "fastfood/fastfood.hpp"

namespace fastfood {

// Versioned JSON record for a transform. Seeds and the spec are always
// written and suffice for bit-exact reconstruction; with include_arrays the
// block diagonals are inlined as well and verified on load.
std::string transform_to_json(const FastfoodTransform& tf, bool include_arrays = false);
FastfoodTransform transform_from_json(const std::string& text);

void save_transform(const FastfoodTransform& tf, const std::string& path,
                    bool include_arrays = false);
FastfoodTransform load_transform(const std::string& path);

std::string spec_to_json(const KernelSpec& spec);
KernelSpec spec_from_json(const std::string& text);

}  // namespace fastfood
