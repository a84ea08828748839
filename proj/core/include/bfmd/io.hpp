// Instance (de)serialization. The on-disk form is JSON with every rational
// encoded as a "p/q" string and every cost table keyed by the decimal local
// bitmask over the owner's items in ascending id order. Serialization is
// canonical (fixed key order, ascending table keys) so equal instances have
// byte-identical encodings and stable digests.
#pragma once

#include <stdexcept>
#include <string>

#include "bfmd/instance.hpp"

namespace bfmd {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses and fully validates; throws ParseError naming the offending field
/// path, or std::invalid_argument for semantic (instance-level) violations.
Instance parse_instance(const std::string& json_text);

std::string serialize_instance(const Instance& inst);

/// FNV-1a 64-bit digest of the canonical serialization, as 16 hex chars.
std::string instance_digest(const Instance& inst);

Instance load_instance_file(const std::string& path);

}  // namespace bfmd
