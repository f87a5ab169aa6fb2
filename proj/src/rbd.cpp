#include "rejuv/rbd.hpp"

namespace rejuv {

RbdTopology RbdTopology::normalized() const {
  RbdTopology t = *this;
  if (t.parallel.size() == 1) {
    t.serial.push_back(t.parallel.front());
    t.parallel.clear();
  }
  return t;
}

RbdTopology RbdTopology::uniform(std::size_t n, std::size_t m, const std::string& ref) {
  if (m > n) throw Error(ErrorKind::InvalidModel, "serial count exceeds host count");
  RbdTopology t;
  t.serial.assign(m, ref);
  t.parallel.assign(n - m, ref);
  return t;
}

}  // namespace rejuv
