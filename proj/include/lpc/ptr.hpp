#pragma once

// Reference disciplines for compound term payloads.
//
//   Unshared      unique owner, copying deep-clones, transferable across threads
//   LocalShared   non-atomic reference count, confined to one thread
//   GlobalShared  atomic reference count, may be shared among workers
//
// Both shared policies support constant-time identity comparison.

#include <atomic>
#include <cstddef>
#include <memory>
#include <utility>

namespace lpc {

/// Owning pointer with value semantics: a copy clones the pointee.
template <class T>
class Box {
 public:
  Box() = default;
  explicit Box(std::unique_ptr<T> p) : p_(std::move(p)) {}

  template <class... Args>
  static Box make(Args&&... args) {
    return Box(std::make_unique<T>(std::forward<Args>(args)...));
  }

  Box(const Box& o) : p_(o.p_ ? std::make_unique<T>(*o.p_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) p_ = o.p_ ? std::make_unique<T>(*o.p_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *p_; }
  const T* operator->() const { return p_.get(); }
  const T* get() const { return p_.get(); }
  T* get_mut() { return p_.get(); }

 private:
  std::unique_ptr<T> p_;
};

namespace detail {

inline void ref_inc(std::size_t& c) { ++c; }
inline bool ref_dec(std::size_t& c) { return --c == 0; }
inline std::size_t ref_load(const std::size_t& c) { return c; }

inline void ref_inc(std::atomic<std::size_t>& c) {
  c.fetch_add(1, std::memory_order_relaxed);
}
inline bool ref_dec(std::atomic<std::size_t>& c) {
  return c.fetch_sub(1, std::memory_order_acq_rel) == 1;
}
inline std::size_t ref_load(const std::atomic<std::size_t>& c) {
  return c.load(std::memory_order_relaxed);
}

}  // namespace detail

/// Intrusive reference-counted pointer; `Count` selects plain or atomic counting.
template <class T, class Count>
class RcPtr {
  struct Block {
    template <class... Args>
    explicit Block(Args&&... args) : refs(1), value(std::forward<Args>(args)...) {}
    Count refs;
    T value;
  };

 public:
  RcPtr() = default;

  template <class... Args>
  static RcPtr make(Args&&... args) {
    RcPtr r;
    r.b_ = new Block(std::forward<Args>(args)...);
    return r;
  }

  RcPtr(const RcPtr& o) noexcept : b_(o.b_) {
    if (b_) detail::ref_inc(b_->refs);
  }
  RcPtr(RcPtr&& o) noexcept : b_(std::exchange(o.b_, nullptr)) {}
  RcPtr& operator=(const RcPtr& o) noexcept {
    RcPtr(o).swap(*this);
    return *this;
  }
  RcPtr& operator=(RcPtr&& o) noexcept {
    RcPtr(std::move(o)).swap(*this);
    return *this;
  }
  ~RcPtr() { release(); }

  void swap(RcPtr& o) noexcept { std::swap(b_, o.b_); }

  const T& operator*() const { return b_->value; }
  const T* operator->() const { return &b_->value; }
  const T* get() const { return b_ ? &b_->value : nullptr; }
  // Interior mutation; callers own the single-writer discipline.
  T& mut() const { return b_->value; }

  explicit operator bool() const { return b_ != nullptr; }
  bool same(const RcPtr& o) const { return b_ == o.b_; }
  std::size_t use_count() const { return b_ ? detail::ref_load(b_->refs) : 0; }

 private:
  void release() noexcept {
    if (b_ && detail::ref_dec(b_->refs)) delete b_;
    b_ = nullptr;
  }

  Block* b_ = nullptr;
};

template <class T>
using Rc = RcPtr<T, std::size_t>;
template <class T>
using Arc = RcPtr<T, std::atomic<std::size_t>>;

struct Unshared {
  template <class T>
  using Ptr = Box<T>;
  static constexpr bool identity = false;
  static constexpr bool thread_safe = true;
  static constexpr const char* name = "unshared";
};

struct LocalShared {
  template <class T>
  using Ptr = Rc<T>;
  static constexpr bool identity = true;
  static constexpr bool thread_safe = false;
  static constexpr const char* name = "local";
};

struct GlobalShared {
  template <class T>
  using Ptr = Arc<T>;
  static constexpr bool identity = true;
  static constexpr bool thread_safe = true;
  static constexpr const char* name = "global";
};

template <class P>
concept SharedPolicy = P::identity;

}  // namespace lpc
