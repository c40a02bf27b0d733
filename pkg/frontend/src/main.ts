import { boot } from "./app";

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    void boot(root).catch((err) => {
      root.textContent = `failed to reach the benchmark service: ${err}`;
    });
  }
});
