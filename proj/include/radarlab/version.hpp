#ifndef RADARLAB_VERSION_HPP
#define RADARLAB_VERSION_HPP

namespace radarlab {

inline constexpr const char* kToolVersion = "radarlab 0.1.0";

}  // namespace radarlab

#endif  // RADARLAB_VERSION_HPP
