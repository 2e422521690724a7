/**
 * Vector rendering of the textual observation onto a canvas. Crisp at any
 * zoom; the pixel observation stays the agents' contract.
 */

import { CanvasSize, worldToCanvas } from "./coords.js";

interface Vec {
  X: number;
  Y: number;
}

export interface ObservationDoc {
  Level_Enemy_Movement_Paths: Vec[][];
  Level_Enemy_Destination: Vec;
  Level_Current_Gold_Coins: number;
  Level_Current_Health: number;
  Level_Remaining_Waves: number;
  Level_Current_Wave_Countdown: string;
  Level_Fog_Of_War_Position: Vec;
  Level_Hero_Realtime_Status: {
    Is_Hero_Dead: boolean;
    Hero_Position: Vec;
    Hero_Current_Health: number;
  } | null;
  Level_Hero_Fire_Of_Rage_Positions: Vec[];
  Level_Towers_Realtime_Status: {
    Position: Vec;
    Tower_Name: string;
    Is_Bulit: boolean;
    Is_Frozen: boolean;
    Knights_Assembly_Position: Vec;
  }[];
  Level_Enemies_Realtime_Status: { Position: Vec; Name: string; Current_Health: number }[];
  Level_Knights_Realtime_Status: { Position: Vec; Current_Health: number }[];
  Level_Dropped_Gold_Coins_Realtime_Status: { Position: Vec } | null;
}

const TOWER_COLORS: Record<string, string> = {
  "Knight Tower": "#4660c8",
  "Magician Tower": "#9646c8",
  "Archer Tower": "#e1a53c",
};

function dot(ctx: CanvasRenderingContext2D, size: CanvasSize, p: Vec, r: number, fill: string) {
  const [px, py] = worldToCanvas(p.X, p.Y, size);
  ctx.beginPath();
  ctx.arc(px, py, r, 0, Math.PI * 2);
  ctx.fillStyle = fill;
  ctx.fill();
}

export function drawObservation(
  ctx: CanvasRenderingContext2D,
  doc: ObservationDoc,
  size: CanvasSize,
): void {
  ctx.fillStyle = "#567d46";
  ctx.fillRect(0, 0, size.width, size.height);

  ctx.strokeStyle = "#967c5c";
  ctx.lineWidth = (14 / 512) * size.width;
  ctx.lineCap = "round";
  ctx.lineJoin = "round";
  for (const road of doc.Level_Enemy_Movement_Paths) {
    ctx.beginPath();
    road.forEach((wp, i) => {
      const [px, py] = worldToCanvas(wp.X, wp.Y, size);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
  }

  const [dx, dy] = worldToCanvas(doc.Level_Enemy_Destination.X, doc.Level_Enemy_Destination.Y, size);
  ctx.fillStyle = "#b22222";
  ctx.fillRect(dx - 10, dy - 10, 20, 20);

  for (const zone of doc.Level_Hero_Fire_Of_Rage_Positions) {
    dot(ctx, size, zone, (0.25 / 6) * size.width, "#f07828");
  }

  const boxHalf = (0.25 / 6) * size.width;
  for (const tower of doc.Level_Towers_Realtime_Status) {
    const [px, py] = worldToCanvas(tower.Position.X, tower.Position.Y, size);
    ctx.strokeStyle = "#d0c8a0";
    ctx.lineWidth = 2;
    ctx.strokeRect(px - boxHalf, py - boxHalf, boxHalf * 2, boxHalf * 2);
    if (tower.Is_Bulit) {
      ctx.fillStyle = tower.Is_Frozen ? "#a0d7eb" : TOWER_COLORS[tower.Tower_Name] ?? "#888";
      ctx.fillRect(px - boxHalf + 3, py - boxHalf + 3, boxHalf * 2 - 6, boxHalf * 2 - 6);
    }
    dot(ctx, size, tower.Knights_Assembly_Position, 4, "#3c50c8");
  }

  const drop = doc.Level_Dropped_Gold_Coins_Realtime_Status;
  if (drop) {
    dot(ctx, size, drop.Position, 7, "#f5d23c");
  }

  for (const knight of doc.Level_Knights_Realtime_Status) {
    dot(ctx, size, knight.Position, 5, "#5abee6");
  }
  for (const enemy of doc.Level_Enemies_Realtime_Status) {
    dot(ctx, size, enemy.Position, 6, "#c83232");
  }

  const hero = doc.Level_Hero_Realtime_Status;
  if (hero && !hero.Is_Hero_Dead) {
    dot(ctx, size, hero.Hero_Position, 9, "#fafafa");
    dot(ctx, size, hero.Hero_Position, 6, "#28a0dc");
  }

  const fog = doc.Level_Fog_Of_War_Position;
  const [fx, fy] = worldToCanvas(fog.X, fog.Y, size);
  ctx.save();
  ctx.globalAlpha = 0.85;
  ctx.beginPath();
  ctx.ellipse(fx, fy, (1.75 / 6) * size.width, (0.85 / 6) * size.height, 0, 0, Math.PI * 2);
  ctx.fillStyle = "#f5f5f5";
  ctx.fill();
  ctx.restore();
}

export function drawHud(
  ctx: CanvasRenderingContext2D,
  doc: ObservationDoc,
  size: CanvasSize,
  heroHealth: number | null,
): void {
  ctx.font = "bold 18px monospace";
  ctx.textBaseline = "top";
  ctx.fillStyle = "#f5d23c";
  ctx.fillText(`gold ${doc.Level_Current_Gold_Coins}`, 8, 8);
  ctx.fillStyle = "#ff6060";
  const health = `base ${doc.Level_Current_Health}`;
  ctx.fillText(health, size.width - 8 - ctx.measureText(health).width, 8);
  ctx.fillStyle = "#ffffff";
  ctx.fillText(`waves ${doc.Level_Remaining_Waves}`, 8, size.height - 26);
  if (heroHealth !== null) {
    ctx.fillStyle = "#28a0dc";
    const text = `hero ${heroHealth}`;
    ctx.fillText(text, size.width - 8 - ctx.measureText(text).width, size.height - 26);
  }
}
