#ifndef LAMBDASIM_VERSION_HPP
#define LAMBDASIM_VERSION_HPP

namespace lambdasim {

inline constexpr const char* version_string = "0.1.0";

} // namespace lambdasim

#endif
