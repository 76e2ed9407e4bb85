#pragma once

#include "billiards/freearc.hpp"
#include "billiards/geometry.hpp"
#include "billiards/sft.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace billiards {

/// Canonical float text: 12 significant digits.
std::string format_number(double v);

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Columns step,arc_id,r,phi,x,y with a header row and LF line endings.
std::string orbit_csv(const Table& table, const std::vector<PhasePoint>& orbit);

/// Table boundary and the orbit polyline. `unfolded` draws the wall
/// unfolding: the copies of the table visited by the orbit, stacked by level.
std::string orbit_svg(const Table& table, const std::vector<PhasePoint>& orbit, bool unfolded);

std::string format_certificate(const EntropyCertificate& cert, bool bits);
std::string format_free_arc(const FreeArcCertificate& cert);

}  // namespace billiards
