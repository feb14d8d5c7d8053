#pragma once

// Seeded theory generator used by the CLI `gen` command and the test suites.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lpc::corpus {

enum class Family { PeanoHeavy, Wide, Planted };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view s);

struct Spec {
  Family family = Family::PeanoHeavy;
  // Number of generated commands after the base signature.
  std::size_t n = 0;
  std::uint64_t seed = 0;
  // Largest fib argument used by peano-heavy theorems.
  unsigned fib = 16;
  // Planted family only: command index of the bad command (1-based, after
  // the base signature). Chosen from the seed when absent.
  std::optional<std::size_t> plant_at;
  // Planted family only: also plant a second error after the first.
  bool second_error = false;
};

/// Commands in the Peano base signature every family starts with.
inline constexpr std::size_t base_commands = 15;

std::string peano_base();

std::string generate(const Spec& spec);

/// `<family>_<n>_<seed>.dk`
std::string file_name(const Spec& spec);

/// Index of the first planted error, or nullopt for families without one.
std::optional<std::size_t> planted_index(const Spec& spec);

}  // namespace lpc::corpus
