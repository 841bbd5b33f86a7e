#ifndef SDTK_VERSION_HPP_
#define SDTK_VERSION_HPP_

namespace sdtk {

inline constexpr const char* kToolkitVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace sdtk

#endif  // SDTK_VERSION_HPP_
