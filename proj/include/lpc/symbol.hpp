#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace lpc {

struct SymbolInfo {
  std::string name;
  std::uint32_t id;
  // Declaration site, for diagnostics.
  std::size_t file = 0;
  std::size_t offset = 0;
};

/// Handle to an interned constant. Equality and hashing are by address.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(const SymbolInfo* info) : info_(info) {}

  const std::string& name() const { return info_->name; }
  std::uint32_t id() const { return info_->id; }
  const SymbolInfo& info() const { return *info_; }
  const SymbolInfo* get() const { return info_; }

  friend bool operator==(Symbol a, Symbol b) { return a.info_ == b.info_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.info_ != b.info_; }

 private:
  const SymbolInfo* info_ = nullptr;
};

/// Canonical constants. Entries are never removed, so handles stay valid for
/// the table's lifetime; the table must outlive every term that mentions them.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(const SymbolTable&) = delete;
  SymbolTable& operator=(const SymbolTable&) = delete;

  Symbol intern(std::string_view text, std::size_t file = 0, std::size_t offset = 0) {
    if (auto it = index_.find(text); it != index_.end()) return it->second;
    auto& info = entries_.emplace_back(
        SymbolInfo{std::string(text), static_cast<std::uint32_t>(entries_.size()), file, offset});
    Symbol s(&info);
    index_.emplace(std::string_view(info.name), s);
    return s;
  }

  std::optional<Symbol> find(std::string_view text) const {
    if (auto it = index_.find(text); it != index_.end()) return it->second;
    return std::nullopt;
  }

  std::size_t size() const { return entries_.size(); }
  Symbol at(std::size_t i) const { return Symbol(&entries_[i]); }

 private:
  std::deque<SymbolInfo> entries_;
  std::unordered_map<std::string_view, Symbol> index_;
};

}  // namespace lpc

template <>
struct std::hash<lpc::Symbol> {
  std::size_t operator()(lpc::Symbol s) const noexcept {
    return std::hash<const void*>{}(s.get());
  }
};
