// HTTP session service.

#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "vcp/http_api.h"
#include "vcp/session.h"

int main(int argc, char** argv) {
  CLI::App app{"Interactive query-building session service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  int idle_minutes = 60;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to listen on");
  app.add_option("--idle-minutes", idle_minutes, "Idle session lifetime")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  vcp::SessionStore store{std::chrono::minutes(idle_minutes)};
  httplib::Server server;
  vcp::mount_api(server, store);

  std::jthread reaper([&store](std::stop_token stop) {
    while (!stop.stop_requested()) {
      std::this_thread::sleep_for(std::chrono::seconds(1));
      store.expire();
    }
  });

  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
}
