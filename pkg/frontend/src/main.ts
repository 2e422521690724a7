import { EditorApp, EditorTool } from "./editor.js";
import { PlayApp, ClickMode } from "./play.js";
import { ProtocolClient } from "./protocol.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function download(filename: string, content: string, type = "application/json") {
  const blob = new Blob([content], { type });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = filename;
  link.click();
  URL.revokeObjectURL(link.href);
}

function main(): void {
  const serverUrl =
    (byId<HTMLInputElement>("server-url").value || "http://127.0.0.1:7465").replace(/\/$/, "");
  const client = new ProtocolClient(serverUrl);

  const editor = new EditorApp(byId<HTMLCanvasElement>("editor-canvas"), byId("editor-status"));
  editor.draw();
  for (const tool of ["road", "tower", "assembly", "destination", "hero", "fog"]) {
    byId(`tool-${tool}`).addEventListener("click", () => editor.setTool(tool as EditorTool));
  }
  byId<HTMLSelectElement>("background-select").addEventListener("change", (event) => {
    editor.setBackground((event.target as HTMLSelectElement).value);
  });
  byId<HTMLInputElement>("brush-width").addEventListener("input", (event) => {
    editor.brushWidth = Number((event.target as HTMLInputElement).value);
    editor.draw();
  });
  byId("finish-road").addEventListener("click", () => editor.finishRoad());
  byId("export-level").addEventListener("click", () => {
    const files = editor.exportFiles();
    if (files) {
      download(`${editor.doc.id}.json`, files.json);
      const image = document.createElement("a");
      image.href = files.image;
      image.download = `${editor.doc.id}.png`;
      image.click();
    }
  });
  byId("validate-level").addEventListener("click", () => {
    void client
      .request("editor_import", { document: editor.doc })
      .then((reply) => {
        const difficulty = (reply.payload.difficulty as { total: number }).total;
        byId("editor-status").textContent = `valid — difficulty ${difficulty.toFixed(2)}`;
      })
      .catch((err) => {
        byId("editor-status").textContent = String(err);
      });
  });

  const play = new PlayApp(byId<HTMLCanvasElement>("play-canvas"), byId("play-toast"), client);
  byId("play-start").addEventListener("click", () => {
    const level = byId<HTMLSelectElement>("play-level").value;
    const seed = Number(byId<HTMLInputElement>("play-seed").value) || 0;
    const record = byId<HTMLInputElement>("play-record").value || undefined;
    void play.start(level, seed, record);
  });
  byId("play-stop").addEventListener("click", () => void play.stop());
  for (const mode of [
    "build_archer", "build_magician", "build_knight", "upgrade", "sell",
    "assembly", "reinforce", "hero",
  ]) {
    byId(`mode-${mode}`).addEventListener("click", () => play.setMode(mode as ClickMode));
  }
  byId("cast-skill").addEventListener("click", () => void play.castSkill());
  byId("upgrade-hero").addEventListener("click", () => void play.upgradeHero());

  for (const tab of ["editor", "play"]) {
    byId(`tab-${tab}`).addEventListener("click", () => {
      byId("editor-panel").style.display = tab === "editor" ? "block" : "none";
      byId("play-panel").style.display = tab === "play" ? "block" : "none";
    });
  }
}

main();
