#pragma once

#include <string>
#include <string_view>

namespace trpnet {

/// Hex SHA-1 of `content` framed as a git blob ("blob <size>\0<content>"),
/// so hashes match `git hash-object` on the same bytes.
std::string git_blob_sha1(std::string_view content);

} // namespace trpnet
