/**
 * Level editor: draw roads waypoint by waypoint, drop tower points with
 * default knight assembly markers, pick a background, export JSON + image.
 */

import { canvasToWorld, clampToMap, worldToCanvas } from "./coords.js";
import {
  EditorDocument,
  newDocument,
  retargetRoads,
  validateDocument,
} from "./editorDocument.js";
import { exportLevelFile, exportMapImage } from "./exporter.js";

export type EditorTool = "road" | "tower" | "assembly" | "destination" | "hero" | "fog";

const BACKGROUNDS: Record<string, string> = {
  grass: "#567d46",
  desert: "#c8b464",
  snow: "#dce6f0",
};

export class EditorApp {
  doc: EditorDocument = newDocument();
  tool: EditorTool = "road";
  activeRoad = -1;
  activeTowerPoint = -1;
  brushWidth = 14;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly statusLine: HTMLElement,
  ) {
    canvas.addEventListener("click", (event) => this.onClick(event));
    canvas.addEventListener("contextmenu", (event) => {
      event.preventDefault();
      this.finishRoad();
    });
  }

  setTool(tool: EditorTool): void {
    this.tool = tool;
    if (tool !== "road") {
      this.activeRoad = -1;
    }
    this.draw();
  }

  setBackground(name: string): void {
    this.doc.background = name;
    this.draw();
  }

  private onClick(event: MouseEvent): void {
    const rect = this.canvas.getBoundingClientRect();
    const [x, y] = canvasToWorld(event.clientX - rect.left, event.clientY - rect.top, {
      width: rect.width,
      height: rect.height,
    });
    this.applyClick(clampToMap(x), clampToMap(y));
    this.draw();
  }

  /** Pure state transition so tests can drive the editor without a DOM. */
  applyClick(x: number, y: number): void {
    const doc = this.doc;
    switch (this.tool) {
      case "road": {
        if (this.activeRoad === -1) {
          doc.roads.push([]);
          this.activeRoad = doc.roads.length - 1;
        }
        doc.roads[this.activeRoad].push([x, y]);
        break;
      }
      case "tower": {
        doc.tower_points.push({
          position: [x, y],
          assembly: [x, clampToMap(y - 0.5)],
          misleading: false,
        });
        this.activeTowerPoint = doc.tower_points.length - 1;
        break;
      }
      case "assembly": {
        if (this.activeTowerPoint >= 0 && doc.tower_points[this.activeTowerPoint]) {
          doc.tower_points[this.activeTowerPoint].assembly = [x, y];
        }
        break;
      }
      case "destination": {
        doc.destination = [x, y];
        retargetRoads(doc);
        break;
      }
      case "hero": {
        doc.hero_start = [x, y];
        break;
      }
      case "fog": {
        doc.fog_start = [x, y];
        break;
      }
    }
  }

  finishRoad(): void {
    if (this.activeRoad >= 0) {
      const road = this.doc.roads[this.activeRoad];
      if (road.length >= 1) {
        road.push([this.doc.destination[0], this.doc.destination[1]]);
      }
      this.activeRoad = -1;
      this.draw();
    }
  }

  /** Validates then returns the export payload, or null with issues shown. */
  exportFiles(): { json: string; image: string } | null {
    retargetRoads(this.doc);
    const issues = validateDocument(this.doc);
    if (issues.length > 0) {
      this.statusLine.textContent =
        "blocked: " + issues.map((i) => `${i.field}: ${i.message}`).join("; ");
      return null;
    }
    this.statusLine.textContent = "exported";
    return { json: exportLevelFile(this.doc), image: exportMapImage(this.canvas) };
  }

  draw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const size = { width: this.canvas.width, height: this.canvas.height };
    ctx.fillStyle = BACKGROUNDS[this.doc.background] ?? BACKGROUNDS.grass;
    ctx.fillRect(0, 0, size.width, size.height);

    ctx.strokeStyle = "#967c5c";
    ctx.lineWidth = this.brushWidth;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    for (const road of this.doc.roads) {
      if (road.length < 2) continue;
      ctx.beginPath();
      road.forEach(([x, y], i) => {
        const [px, py] = worldToCanvas(x, y, size);
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
    }
    // waypoints in red, assembly defaults in blue (editor convention)
    for (const road of this.doc.roads) {
      for (const [x, y] of road) {
        const [px, py] = worldToCanvas(x, y, size);
        ctx.beginPath();
        ctx.arc(px, py, 5, 0, Math.PI * 2);
        ctx.fillStyle = "#d03030";
        ctx.fill();
      }
    }
    const boxHalf = (0.25 / 6) * size.width;
    for (const tp of this.doc.tower_points) {
      const [px, py] = worldToCanvas(tp.position[0], tp.position[1], size);
      ctx.strokeStyle = "#d0c8a0";
      ctx.lineWidth = 2;
      ctx.strokeRect(px - boxHalf, py - boxHalf, boxHalf * 2, boxHalf * 2);
      const [ax, ay] = worldToCanvas(tp.assembly[0], tp.assembly[1], size);
      ctx.beginPath();
      ctx.arc(ax, ay, 5, 0, Math.PI * 2);
      ctx.fillStyle = "#3c50c8";
      ctx.fill();
    }
    const [dx, dy] = worldToCanvas(this.doc.destination[0], this.doc.destination[1], size);
    ctx.fillStyle = "#b22222";
    ctx.fillRect(dx - 10, dy - 10, 20, 20);
    const [hx, hy] = worldToCanvas(this.doc.hero_start[0], this.doc.hero_start[1], size);
    ctx.beginPath();
    ctx.arc(hx, hy, 8, 0, Math.PI * 2);
    ctx.fillStyle = "#28a0dc";
    ctx.fill();
  }
}
