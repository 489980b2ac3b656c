#ifndef GCX_VERSION_HPP
#define GCX_VERSION_HPP

namespace gcx {

inline constexpr char const *library_version = "1.0.0";

} // namespace gcx

#endif // GCX_VERSION_HPP
