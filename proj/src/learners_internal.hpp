#pragma once

#include <vector>

#include "cpnet/learners.hpp"

namespace cpnet::detail {

// Observation of the preference between the two sides of a swap:
// 0 none stated, 1 first preferred, 2 second preferred.
class Channel {
 public:
  Channel(OracleSession& session, Strategy strategy);

  int observe(const SwapInstance& x);
  bool complete() const { return complete_; }
  OracleSession& session() { return session_; }

 private:
  OracleSession& session_;
  Strategy strategy_;
  bool complete_;
};

int search_parent(Channel& channel, SwapInstance y, int oy, SwapInstance y2, int oy2,
                  std::vector<int> candidates, Elimination elimination);

Order order_from_observation(int observation);

CpNet build_net(const ClassSpec& spec, std::vector<Cpt> cpts);

}  // namespace cpnet::detail
