#pragma once

#include <array>
#include <optional>
#include <string>

namespace semmap {

enum class ClassLabel {
  door,
  bench,
  trash_bin,
  fire_extinguisher,
  water_fountain,
  person,
};

inline constexpr std::array<ClassLabel, 6> kAllClasses = {
    ClassLabel::door,           ClassLabel::bench,
    ClassLabel::trash_bin,      ClassLabel::fire_extinguisher,
    ClassLabel::water_fountain, ClassLabel::person,
};

// Everything but person, which is never tracked or annotated.
inline constexpr std::array<ClassLabel, 5> kStaticClasses = {
    ClassLabel::door,           ClassLabel::bench,
    ClassLabel::trash_bin,      ClassLabel::fire_extinguisher,
    ClassLabel::water_fountain,
};

inline const std::string& class_name(ClassLabel label) {
  static const std::array<std::string, 6> names = {
      "door", "bench", "trash_bin", "fire_extinguisher", "water_fountain",
      "person"};
  return names[static_cast<std::size_t>(label)];
}

inline std::optional<ClassLabel> class_from_name(const std::string& name) {
  for (ClassLabel label : kAllClasses)
    if (class_name(label) == name) return label;
  return std::nullopt;
}

}  // namespace semmap
