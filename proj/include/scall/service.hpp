#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scall/ahp.hpp"
#include "scall/search.hpp"

namespace httplib {
class Server;
}

namespace scall {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceConfig {
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  std::chrono::milliseconds request_timeout{30'000};
  AhpOptions ahp;
  GAConfig ga_defaults;
};

// Stateless request handlers behind the /api/v1 endpoints. Each takes the raw
// request body and never throws; failures become error bodies of the form
// {"error": CODE, "message": ..., "detail": ...}.
class AllocationService {
 public:
  explicit AllocationService(ServiceConfig config = {}) : config_(std::move(config)) {}

  // POST /api/v1/validate: body is a model document.
  HttpResponse validate(std::string_view body) const;
  // POST /api/v1/ahp: body is {"comparison": [[...]]}.
  HttpResponse ahp(std::string_view body) const;
  // POST /api/v1/allocate: body is
  //   {"model": {...}, "method": "ga"|"exhaustive", "seed": N,
  //    "alternatives": K, "gaConfig": {...}, "uniformWeights": bool}
  HttpResponse allocate(std::string_view body) const;

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
};

// Registers the API routes (and CORS handling) on `server`; serves
// `static_dir` under "/" when given.
void mount_routes(httplib::Server& server, const AllocationService& service,
                  const std::optional<std::string>& static_dir = std::nullopt);

// Blocks serving until the process is stopped. Returns nonzero if binding fails.
int serve(const ServiceConfig& config, const std::string& host, int port,
          const std::optional<std::string>& static_dir);

}  // namespace scall
