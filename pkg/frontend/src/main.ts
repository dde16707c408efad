import { bootstrap } from "./dom.js";

bootstrap().catch((error) => {
  const box = document.getElementById("results");
  if (box) box.textContent = `failed to load: ${error}`;
});
