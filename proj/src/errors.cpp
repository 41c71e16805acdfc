#include "jacobi/errors.hpp"

#include <cstdio>
#include <iostream>
#include <mutex>
#include <utility>

namespace jacobi {

namespace {

std::mutex handler_mutex;

WarningHandler& handler_slot() {
  static WarningHandler handler = [](std::string_view msg) { std::cerr << "jacobi: warning: " << msg << '\n'; };
  return handler;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::scoped_lock lock(handler_mutex);
  return std::exchange(handler_slot(), std::move(handler));
}

void warn(std::string_view message) {
  WarningHandler h;
  {
    std::scoped_lock lock(handler_mutex);
    h = handler_slot();
  }
  if (h) {
    h(message);
  }
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

} // namespace jacobi
