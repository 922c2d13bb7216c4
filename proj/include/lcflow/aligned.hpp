#pragma once

#include <cstddef>
#include <new>
#include <vector>

namespace lcflow {

namespace detail {
void* fft_alloc(std::size_t bytes);
void fft_free(void* p) noexcept;
}  // namespace detail

/// Allocator handing out FFTW-aligned memory so field buffers can be passed
/// straight to the planned transforms.
template <class T>
struct FftAllocator {
  using value_type = T;

  FftAllocator() noexcept = default;
  template <class U>
  FftAllocator(const FftAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    void* p = detail::fft_alloc(n * sizeof(T));
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fft_free(p); }

  template <class U>
  bool operator==(const FftAllocator<U>&) const noexcept {
    return true;
  }
};

template <class T>
using AlignedVector = std::vector<T, FftAllocator<T>>;

}  // namespace lcflow
