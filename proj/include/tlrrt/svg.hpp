// Copyright 2026 The tlrrt Authors
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

#ifndef TLRRT_SVG_HPP_
#define TLRRT_SVG_HPP_

#include <string>

#include "tlrrt/geometry.hpp"
#include "tlrrt/product.hpp"

namespace tlrrt
{

/// Workspace plus, per robot, the prefix as a solid polyline and the suffix
/// loop as a dashed one. Pass nullptr for an environment-only drawing.
std::string render_svg(const Workspace & w, const Plan * plan, int size_px = 600);

}  // namespace tlrrt

#endif  // TLRRT_SVG_HPP_
