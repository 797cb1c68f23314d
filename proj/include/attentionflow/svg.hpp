#pragma once

#include <string>

#include "attentionflow/influence.hpp"
#include "attentionflow/layout.hpp"

namespace attnflow {

struct SvgOptions {
  int width = 960;
  int height = 480;
};

/// Static picture of a resolved ego layout: timeline axis, tree-ring nodes,
/// edges stroked by relative width. Output is deterministic, suitable for
/// golden-file comparison.
std::string render_svg(const ResolvedLayout& layout, const EgoNetwork& ego_net,
                       const SvgOptions& options = {});

}  // namespace attnflow
