#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string_view>

#include "botsig/bits.hpp"
#include "botsig/random_tape.hpp"

namespace botsig {

enum class Verdict { Accept, Reject, Abort };

std::string_view to_string(Verdict v);

/// A signature is either a payload or the abort symbol.
template <class Sig>
using MaybeSignature = std::optional<Sig>;

/// Shared shape of every scheme in the library. sign() takes the signing
/// key by mutable reference because the stateful scheme updates its memory.
template <class S>
concept SignatureScheme =
    requires(const S& s, typename S::SigningKey& sk, const typename S::VerifyKey& vk,
             const Bits& m, const MaybeSignature<typename S::Signature>& sig, RandomTape& tape) {
      typename S::KeyPair;
      { s.keygen(tape) } -> std::same_as<typename S::KeyPair>;
      { s.sign(sk, m, tape) } -> std::same_as<MaybeSignature<typename S::Signature>>;
      { s.verify(vk, m, sig, tape) } -> std::same_as<Verdict>;
      { s.message_bits() } -> std::convertible_to<std::size_t>;
    };

template <class SK, class VK>
struct BasicKeyPair {
  SK sk;
  VK vk;
  friend bool operator==(const BasicKeyPair&, const BasicKeyPair&) = default;
};

}  // namespace botsig
