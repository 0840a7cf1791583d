import { configUrlFromQuery, loadConfig } from "./config.js";
import { mountViewer } from "./viewer.js";

async function boot(): Promise<void> {
  const container = document.getElementById("app");
  if (!container) return;
  const configUrl = configUrlFromQuery(window.location.search);
  if (!configUrl) {
    container.textContent =
      "missing ?config=<url> — point this page at a served view config";
    return;
  }
  try {
    const config = await loadConfig(configUrl);
    await mountViewer(config, container);
  } catch (error) {
    container.textContent = `failed to load ${configUrl}: ${String(error)}`;
  }
}

void boot();
