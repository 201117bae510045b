#pragma once

// Binary envelope and JSON debug mirror for keys and signatures.
//
// Envelope layout: magic "BSIG1", scheme tag byte, artifact kind byte, the
// profile JSON (u32 length + UTF-8), then the body (u32 length + bytes).
// Bodies encode fields in declaration order: Bits as u32 bit length plus
// packed bytes, BotValue as its own tagged encoding behind a u32 length,
// integers as u64, vectors and maps behind a u32 count, optionals behind a
// presence byte. Each aggregate lists its fields once in describe(), and
// the writer, reader and JSON mirror all walk that list.

#include <array>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "botsig/bot_value.hpp"
#include "botsig/errors.hpp"
#include "botsig/signatures/amplified.hpp"
#include "botsig/signatures/auth_tree.hpp"

namespace botsig {

enum class SchemeTag : std::uint8_t {
  Oms = 1,
  Oms2 = 2,
  Stateful = 3,
  Stateless = 4,
  AmplifiedSuf = 5,
  AmplifiedUf = 6,
};

enum class ArtifactKind : std::uint8_t { SigningKey = 1, VerifyKey = 2, Signature = 3 };

struct Envelope {
  SchemeTag tag = SchemeTag::Oms;
  ArtifactKind kind = ArtifactKind::Signature;
  std::string profile;
  Bytes body;
  friend bool operator==(const Envelope&, const Envelope&) = default;
};

Bytes encode_envelope(const Envelope& env);
Envelope decode_envelope(std::span<const std::uint8_t> data);

std::string_view scheme_name(SchemeTag tag);
/// Accepts the CLI spellings oms, oms2, stateful, stateless, amp-suf, amp-uf.
SchemeTag scheme_from_name(std::string_view name);

// Field lists. T is the struct, possibly const-qualified.

#define BOTSIG_DESCRIBED(Type) \
  template <class V, class T>  \
    requires std::same_as<std::remove_const_t<T>, Type> void describe(V& v, T& x)

BOTSIG_DESCRIBED(OmsSecretKey) { v("preimages", x.preimages); }
BOTSIG_DESCRIBED(OmsVerifyKey) {
  v("hash_keys", x.hash_keys);
  v("images", x.images);
}
BOTSIG_DESCRIBED(OmsSignature) { v("preimages", x.preimages); }
BOTSIG_DESCRIBED(Oms2SecretKey) {
  v("inner", x.inner);
  v("hash_key", x.hash_key);
}
BOTSIG_DESCRIBED(Oms2Signature) {
  v("hash_key", x.hash_key);
  v("inner", x.inner);
}
BOTSIG_DESCRIBED(Oms2KeyPair) {
  v("sk", x.sk);
  v("vk", x.vk);
}
BOTSIG_DESCRIBED(NodeEntry) {
  v("keys", x.keys);
  v("child_signature", x.child_signature);
}
BOTSIG_DESCRIBED(StatefulSigningKey) {
  v("root", x.root);
  v("memory", x.memory);
}
BOTSIG_DESCRIBED(StatelessSigningKey) {
  v("root", x.root);
  v("prf_keys", x.prf_keys);
  v("masks", x.masks);
}
BOTSIG_DESCRIBED(ChainLink) {
  v("signature", x.signature);
  v("left", x.left);
  v("right", x.right);
}
BOTSIG_DESCRIBED(AuthTreeSignature) {
  v("links", x.links);
  v("leaf", x.leaf);
}

#undef BOTSIG_DESCRIBED

template <class V, class T>
  requires std::same_as<std::remove_const_t<T>, IndexedSignature<typename T::InnerType>>
void describe(V& v, T& x) {
  v("index", x.index);
  v("inner", x.inner);
}

namespace codec_detail {

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};
template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};
template <class T>
struct is_array : std::false_type {};
template <class T, std::size_t N>
struct is_array<std::array<T, N>> : std::true_type {};
template <class T>
struct is_map : std::false_type {};
template <class K, class V>
struct is_map<std::map<K, V>> : std::true_type {};

struct Probe {
  template <class T>
  void operator()(const char*, T&) {}
};

template <class T>
concept Described = requires(Probe& p, T& x) { describe(p, x); };

}  // namespace codec_detail

class ByteWriter {
 public:
  void u8(std::uint8_t b) { out_.push_back(b); }
  void u32(std::uint32_t n);
  void u64(std::uint64_t n);
  void raw(std::span<const std::uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void blob(std::span<const std::uint8_t> data);
  void bits(const Bits& b);

  template <class T>
  void operator()(const char*, const T& x) {
    put(x);
  }

  template <class T>
  void put(const T& x) {
    using U = std::remove_cvref_t<T>;
    if constexpr (std::is_same_v<U, Bits>) {
      bits(x);
    } else if constexpr (std::is_same_v<U, BotValue>) {
      blob(x.encode());
    } else if constexpr (std::is_same_v<U, bool>) {
      u8(x ? 1 : 0);
    } else if constexpr (std::is_integral_v<U>) {
      u64(static_cast<std::uint64_t>(x));
    } else if constexpr (codec_detail::is_vector<U>::value) {
      u32(static_cast<std::uint32_t>(x.size()));
      for (const auto& e : x) put(e);
    } else if constexpr (codec_detail::is_array<U>::value) {
      for (const auto& e : x) put(e);
    } else if constexpr (codec_detail::is_optional<U>::value) {
      u8(x ? 1 : 0);
      if (x) put(*x);
    } else if constexpr (codec_detail::is_map<U>::value) {
      u32(static_cast<std::uint32_t>(x.size()));
      for (const auto& [k, val] : x) {
        put(k);
        put(val);
      }
    } else {
      static_assert(codec_detail::Described<const U>, "type has no field list");
      describe(*this, x);
    }
  }

  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::span<const std::uint8_t> raw(std::size_t n);
  std::span<const std::uint8_t> blob();
  Bits bits();
  bool done() const noexcept { return pos_ == data_.size(); }
  void expect_end() const;

  template <class T>
  void operator()(const char*, T& x) {
    get(x);
  }

  template <class T>
  void get(T& x) {
    using U = std::remove_cvref_t<T>;
    if constexpr (std::is_same_v<U, Bits>) {
      x = bits();
    } else if constexpr (std::is_same_v<U, BotValue>) {
      x = BotValue::decode(blob());
    } else if constexpr (std::is_same_v<U, bool>) {
      x = flag();
    } else if constexpr (std::is_integral_v<U>) {
      x = static_cast<U>(u64());
    } else if constexpr (codec_detail::is_vector<U>::value) {
      const std::uint32_t n = count();
      x.clear();
      x.resize(n);
      for (auto& e : x) get(e);
    } else if constexpr (codec_detail::is_array<U>::value) {
      for (auto& e : x) get(e);
    } else if constexpr (codec_detail::is_optional<U>::value) {
      if (flag()) {
        x.emplace();
        get(*x);
      } else {
        x.reset();
      }
    } else if constexpr (codec_detail::is_map<U>::value) {
      const std::uint32_t n = count();
      x.clear();
      for (std::uint32_t i = 0; i < n; ++i) {
        typename U::key_type k;
        typename U::mapped_type val;
        get(k);
        get(val);
        if (!x.emplace(std::move(k), std::move(val)).second) throw DecodeError("duplicate map key");
      }
    } else {
      static_assert(codec_detail::Described<U>, "type has no field list");
      describe(*this, x);
    }
  }

 private:
  bool flag();
  /// Element count, sanity-checked against the bytes left.
  std::uint32_t count();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

class JsonMirror {
 public:
  template <class T>
  void operator()(const char* name, const T& x) {
    obj_[name] = to(x);
  }

  template <class T>
  static nlohmann::json to(const T& x) {
    using U = std::remove_cvref_t<T>;
    if constexpr (std::is_same_v<U, Bits>) {
      return x.to_hex();
    } else if constexpr (std::is_same_v<U, BotValue>) {
      return x.to_text();
    } else if constexpr (std::is_arithmetic_v<U>) {
      return x;
    } else if constexpr (codec_detail::is_vector<U>::value || codec_detail::is_array<U>::value) {
      auto arr = nlohmann::json::array();
      for (const auto& e : x) arr.push_back(to(e));
      return arr;
    } else if constexpr (codec_detail::is_optional<U>::value) {
      return x ? to(*x) : nlohmann::json(nullptr);
    } else if constexpr (codec_detail::is_map<U>::value) {
      auto arr = nlohmann::json::array();
      for (const auto& [k, val] : x) arr.push_back({{"key", to(k)}, {"value", to(val)}});
      return arr;
    } else {
      JsonMirror m;
      describe(m, x);
      return std::move(m.obj_);
    }
  }

 private:
  nlohmann::json obj_ = nlohmann::json::object();
};

template <class T>
Bytes encode_value(const T& x) {
  ByteWriter w;
  w.put(x);
  return w.take();
}

/// Decodes a value that must span the whole input.
template <class T>
T decode_value(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  T x{};
  r.get(x);
  r.expect_end();
  return x;
}

template <class T>
nlohmann::json to_debug_json(const T& x) {
  return JsonMirror::to(x);
}

}  // namespace botsig
