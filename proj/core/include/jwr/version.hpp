#ifndef JWR_VERSION_HPP
#define JWR_VERSION_HPP

namespace jwr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jwr

#endif  // JWR_VERSION_HPP
