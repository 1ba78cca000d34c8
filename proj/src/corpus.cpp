#include "bucketeer/corpus.hpp"

#include <array>
#include <random>
#include <string_view>
#include <variant>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

enum class Placeholder { Index, Random };
using Piece = std::variant<std::string, Placeholder>;

std::vector<Piece> compile(std::string_view pattern) {
  std::vector<Piece> pieces;
  std::string literal;
  while (!pattern.empty()) {
    const auto open = pattern.find('{');
    literal.append(pattern.substr(0, open));
    if (open == std::string_view::npos) break;
    const auto close = pattern.find('}', open);
    if (close == std::string_view::npos) {
      throw ConfigError("unterminated placeholder in id pattern");
    }
    const auto name = pattern.substr(open + 1, close - open - 1);
    if (!literal.empty()) pieces.emplace_back(std::move(literal));
    literal.clear();
    if (name == "index") {
      pieces.emplace_back(Placeholder::Index);
    } else if (name == "random") {
      pieces.emplace_back(Placeholder::Random);
    } else {
      throw ConfigError("unknown placeholder '{" + std::string(name) + "}' in id pattern");
    }
    pattern.remove_prefix(close + 1);
  }
  if (!literal.empty()) pieces.emplace_back(std::move(literal));
  return pieces;
}

bool has(const std::vector<Piece>& pieces, Placeholder p) {
  for (const auto& piece : pieces) {
    if (const auto* ph = std::get_if<Placeholder>(&piece); ph && *ph == p) return true;
  }
  return false;
}

void append_hex(std::string& out, std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(v >> shift) & 0xf]);
}

}  // namespace

void validate(const CorpusSpec& spec) {
  if (spec.n_users == 0) throw ConfigError("corpus needs at least one user");
  const auto pieces = compile(spec.id_pattern);
  if (spec.n_users > 1 && !has(pieces, Placeholder::Index)) {
    throw ConfigError("id pattern '" + spec.id_pattern +
                      "' has no {index} placeholder; IDs would not be distinct");
  }
  if (pieces.empty()) throw ConfigError("id pattern must not be empty");
}

std::vector<std::string> generate_corpus(const CorpusSpec& spec) {
  validate(spec);
  const auto pieces = compile(spec.id_pattern);
  std::mt19937_64 rng(spec.seed);

  std::vector<std::string> ids;
  ids.reserve(spec.n_users);
  for (std::size_t i = 0; i < spec.n_users; ++i) {
    std::string id;
    for (const auto& piece : pieces) {
      if (const auto* lit = std::get_if<std::string>(&piece)) {
        id += *lit;
      } else if (std::get<Placeholder>(piece) == Placeholder::Index) {
        id += std::to_string(i);
      } else {
        append_hex(id, rng());
      }
    }
    ids.push_back(std::move(id));
  }
  return ids;
}

}  // namespace bucketeer
