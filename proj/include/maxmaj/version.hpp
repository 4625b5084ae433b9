// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_VERSION_HPP
#define MAXMAJ_VERSION_HPP

#include <string_view>

namespace maxmaj
{

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace maxmaj

#endif  // MAXMAJ_VERSION_HPP
