#pragma once

#include "itpn/net.hpp"

#include <string>
#include <string_view>

namespace itpn {

/// Parses the line-oriented `.itpn` format:
///   place <name> [tokens]
///   trans <name> [tmin,tmax|inf]
///   arc <place> -> <trans> [weight]
///   arc <trans> -> <place> [weight]
///   inhibit <place> -o <trans> [weight]
/// `#` starts a comment. Throws ParseError with the offending line.
Net parse_model(std::string_view text);
Net load_model(const std::string& path);

/// Inverse of parse_model.
std::string print_model(const Net& net);

}  // namespace itpn
