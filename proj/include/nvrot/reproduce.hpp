#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nvrot/config.hpp"

namespace nvrot {

/// Targets accepted by reproduce(): fig1, fig2, fig3, fig4, prestudy, all.
const std::vector<std::string> &reproduce_targets();

/**
 * @brief Regenerates the data behind one figure (or all of them) into
 * @p out_dir and returns the files written, in write order.
 *
 * Model constants (D, g_e, mu_B) and the QFI frame come from @p base; the
 * coupling, Delta and grids are fixed per figure and recorded as comment
 * lines at the top of every CSV.
 */
std::vector<std::filesystem::path> reproduce(const std::string &target, const RunConfig &base,
                                             const std::filesystem::path &out_dir);

} // namespace nvrot
