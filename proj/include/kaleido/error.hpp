#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kaleido {

/// Failure categories for malformed input. Mathematically invalid objects are
/// reported through the various *Report structs instead.
enum class Errc {
  NonPrimeModulus,
  ReducibleModulus,
  OrderTooSmall,
  ZeroElement,
  BadCongruence,
  DuplicateElements,
  InvalidKDF,
  NotAUnitalDesign,
  BadVectorLength,
  IngredientInvalid,
  SchemaMismatch,
  MissingIngredient,
  InvalidPBD,
  NotAnInitialBlock,
  UnsupportedOrder,
  UnknownTable,
  InvalidSchema,
  MalformedInput,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::BadCongruence: return "BadCongruence";
    case Errc::DuplicateElements: return "DuplicateElements";
    case Errc::InvalidKDF: return "InvalidKDF";
    case Errc::NotAUnitalDesign: return "NotAUnitalDesign";
    case Errc::BadVectorLength: return "BadVectorLength";
    case Errc::IngredientInvalid: return "IngredientInvalid";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::MissingIngredient: return "MissingIngredient";
    case Errc::InvalidPBD: return "InvalidPBD";
    case Errc::NotAnInitialBlock: return "NotAnInitialBlock";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::UnknownTable: return "UnknownTable";
    case Errc::InvalidSchema: return "InvalidSchema";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kaleido
