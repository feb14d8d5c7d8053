#pragma once

// Hash array mapped trie with path copying. Copying a map copies one
// pointer; updates share every untouched node with the original.
//
// `KeyBits` must map distinct keys to distinct 64-bit values, which lets the
// trie do without collision buckets.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace lpc {

template <class K, class V, class KeyBits>
class PersistentMap {
  static constexpr unsigned kBits = 5;
  static constexpr std::uint64_t kMask = (1u << kBits) - 1;

  struct Node;
  struct Leaf {
    K key;
    V value;
  };
  using NodePtr = std::shared_ptr<const Node>;
  using Slot = std::variant<Leaf, NodePtr>;

  struct Node {
    std::uint32_t bitmap = 0;
    std::vector<Slot> slots;

    static unsigned pos(std::uint32_t bitmap, unsigned bit) {
      return static_cast<unsigned>(__builtin_popcount(bitmap & ((1u << bit) - 1)));
    }
  };

 public:
  PersistentMap() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  const V* find(const K& key) const {
    const std::uint64_t h = KeyBits{}(key);
    const Node* n = root_.get();
    for (unsigned shift = 0; n != nullptr; shift += kBits) {
      const unsigned bit = static_cast<unsigned>((h >> shift) & kMask);
      if ((n->bitmap & (1u << bit)) == 0) return nullptr;
      const Slot& s = n->slots[Node::pos(n->bitmap, bit)];
      if (const auto* leaf = std::get_if<Leaf>(&s)) {
        return leaf->key == key ? &leaf->value : nullptr;
      }
      n = std::get<NodePtr>(s).get();
    }
    return nullptr;
  }

  bool contains(const K& key) const { return find(key) != nullptr; }

  /// Returns a map with `key` bound to `value`; `*this` is left unchanged.
  PersistentMap set(const K& key, V value) const {
    bool added = false;
    PersistentMap out;
    out.root_ = insert(root_.get(), 0, KeyBits{}(key), key, std::move(value), added);
    out.size_ = size_ + (added ? 1 : 0);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    if (root_) visit(*root_, f);
  }

  /// Identity of the root node; equal roots imply equal contents.
  const void* root_identity() const { return root_.get(); }

 private:
  static NodePtr insert(const Node* n, unsigned shift, std::uint64_t h, const K& key, V&& value,
                        bool& added) {
    auto out = std::make_shared<Node>();
    if (n) *out = *n;
    const unsigned bit = static_cast<unsigned>((h >> shift) & kMask);
    const unsigned at = Node::pos(out->bitmap, bit);
    if ((out->bitmap & (1u << bit)) == 0) {
      out->bitmap |= (1u << bit);
      out->slots.insert(out->slots.begin() + at, Slot(Leaf{key, std::move(value)}));
      added = true;
      return out;
    }
    Slot& s = out->slots[at];
    if (auto* leaf = std::get_if<Leaf>(&s)) {
      if (leaf->key == key) {
        leaf->value = std::move(value);
        return out;
      }
      // Two distinct keys share this prefix: push the old leaf one level down.
      Leaf old = *leaf;
      NodePtr sub = insert(nullptr, shift + kBits, KeyBits{}(old.key), old.key,
                           std::move(old.value), added);
      sub = insert(sub.get(), shift + kBits, h, key, std::move(value), added);
      s = Slot(std::move(sub));
      added = true;
      return out;
    }
    s = Slot(insert(std::get<NodePtr>(s).get(), shift + kBits, h, key, std::move(value), added));
    return out;
  }

  template <class F>
  static void visit(const Node& n, F& f) {
    for (const auto& s : n.slots) {
      if (const auto* leaf = std::get_if<Leaf>(&s)) {
        f(leaf->key, leaf->value);
      } else {
        visit(*std::get<NodePtr>(s), f);
      }
    }
  }

  NodePtr root_;
  std::size_t size_ = 0;
};

}  // namespace lpc
