#pragma once

#include <string>
#include <vector>

#include "vstates/state_io.hpp"

namespace vstates {

struct RenderOptions {
  int samples = 720;     // points per boundary curve
  int size_px = 640;     // width = height
  bool legend = true;
};

/// SVG drawing of one or more states: each contributes a closed outer and
/// inner boundary resampled from its cosine series. States are drawn in
/// order of increasing Omega with stroke colour running from red to black.
std::string render_svg(std::vector<StateFile> states, const RenderOptions& options = {});

}  // namespace vstates
