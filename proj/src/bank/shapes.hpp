// Copyright 2026 The Scrapbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCRAPBOOK_BANK_SHAPES_HPP_
#define SCRAPBOOK_BANK_SHAPES_HPP_

#include "bank/raster.hpp"
#include "core/types.hpp"

namespace scrapbook {

struct Cutout {
  Image rgba;  // 4 channels, alpha 255 under the mask and 0 elsewhere
  Mask mask;
};

/// Filled circle or regular polygon of the spec's color inscribed in a
/// square box of side 70 + 40*size_index. Polygons rest on a flat side.
/// A pixel is inside when its center is.
Cutout rasterize_shape(const ObjectSpec& spec);

}  // namespace scrapbook

#endif  // SCRAPBOOK_BANK_SHAPES_HPP_
